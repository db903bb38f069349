#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace mh {

// Locale-free double formatting, 17 significant digits (round-trip exact).
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Complex literal "re,im"; plain "re" means imaginary part 0.
inline std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  auto parse_part = [&text](std::size_t begin, std::size_t end) {
    double out = 0.0;
    const char* first = text.data() + begin;
    const char* last = text.data() + end;
    while (first < last && *first == ' ') ++first;
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc() || res.ptr != last) {
      throw std::invalid_argument("malformed complex literal '" + text + "' (expected \"re,im\")");
    }
    return out;
  };
  if (comma == std::string::npos) {
    return {parse_part(0, text.size()), 0.0};
  }
  return {parse_part(0, comma), parse_part(comma + 1, text.size())};
}

// Grid literal "start:stop:count:{lin|geom}".
struct GridSpec {
  double start = 1.0;
  double stop = 1.0;
  int count = 1;
  bool geometric = false;

  std::vector<double> points() const {
    if (count < 1) throw std::invalid_argument("grid count must be positive");
    std::vector<double> out;
    if (count == 1) {
      out.push_back(start);
      return out;
    }
    if (geometric) {
      if (start == 0.0 || stop == 0.0 || (start > 0) != (stop > 0)) {
        throw std::invalid_argument("geometric grid needs nonzero same-sign endpoints");
      }
      const double ratio = std::pow(stop / start, 1.0 / (count - 1));
      double v = start;
      for (int i = 0; i < count; ++i) {
        out.push_back(v);
        v *= ratio;
      }
    } else {
      const double step = (stop - start) / (count - 1);
      for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    }
    return out;
  }
};

inline GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(pos));
      break;
    }
    parts.push_back(text.substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (parts.size() != 4) {
    throw std::invalid_argument("malformed grid '" + text + "' (expected start:stop:count:{lin|geom})");
  }
  GridSpec g;
  try {
    g.start = std::stod(parts[0]);
    g.stop = std::stod(parts[1]);
    g.count = std::stoi(parts[2]);
  } catch (...) {
    throw std::invalid_argument("malformed grid '" + text + "'");
  }
  if (parts[3] == "lin") g.geometric = false;
  else if (parts[3] == "geom") g.geometric = true;
  else throw std::invalid_argument("grid kind must be lin or geom, got '" + parts[3] + "'");
  return g;
}

}  // namespace mh

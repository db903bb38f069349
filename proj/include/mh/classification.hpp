#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "mh/groups.hpp"

namespace mh {

// One case of the classification of closed subgroups K of O(n) that act
// transitively on the spheres about 0: the identity component K0 together
// with the finite extensions F for which K = K0 F stays inside O(n).
//
// Extension descriptors:
//   "trivial"  F = {I}
//   "-I"       F = {I, -I}               (case 1: O(n); case 4: G2 u (-I)G2)
//   "Z_l"      cyclic scalar groups, any l >= 1
//   "D_l"      dihedral Z_l u alpha Z_l  (alpha = complex conjugation)
//   "alpha"    F = {I, alpha}            (U(m) u alpha U(m))
//   "D*_l"     binary dihedral of order 4l
//   "T*","O*","I*"  binary tetrahedral / octahedral / icosahedral
//   "beta"     F = {I, beta}, beta = quaternion scalar j
struct ClassificationEntry {
  std::string case_id;        // "1", "2i", "2ii", "3i", "3ii", "3iii", "4", "5", "6"
  std::string n_predicate;    // dimension constraint, human readable
  std::string k0;             // identity component rendered for this n
  std::vector<std::string> extensions;
  bool sampler_available;
};

// All cases admitting ambient dimension n. Case 2 is listed for n = 2m with
// m >= 2 only: SU(1) is trivial (not transitive on S^1) and U(1) coincides
// with SO(2), already present as case 1.
inline std::vector<ClassificationEntry> transitive_groups(int n) {
  if (n <= 1) throw std::domain_error("transitive_groups: requires n >= 2");
  std::vector<ClassificationEntry> out;
  const std::string ns = std::to_string(n);

  out.push_back({"1", "n >= 2", "SO(" + ns + ")", {"trivial", "-I"}, true});

  if (n % 2 == 0 && n / 2 >= 2) {
    const std::string ms = std::to_string(n / 2);
    out.push_back({"2i", "n = 2m, m >= 2", "SU(" + ms + ")", {"Z_l", "D_l"}, true});
    out.push_back({"2ii", "n = 2m, m >= 2", "U(" + ms + ")", {"trivial", "alpha"}, true});
  }
  if (n % 4 == 0) {
    const std::string ms = std::to_string(n / 4);
    out.push_back({"3i", "n = 4m", "Sp(" + ms + ")", {"Z_l", "D*_l", "T*", "O*", "I*"}, true});
    out.push_back({"3ii", "n = 4m", "Sp(" + ms + ")U(1)", {"trivial", "beta"}, false});
    out.push_back({"3iii", "n = 4m", "Sp(" + ms + ")Sp(1)", {"trivial"}, false});
  }
  if (n == 7) out.push_back({"4", "n = 7", "G2", {"trivial", "-I"}, false});
  if (n == 8) out.push_back({"5", "n = 8", "Spin(7)", {"trivial"}, false});
  if (n == 16) out.push_back({"6", "n = 16", "Spin(9)", {"trivial"}, false});
  return out;
}

namespace detail {

// Parse "NAME(k)" into (NAME, k); returns false if the name has no parameter.
inline bool parse_parametric(const std::string& name, std::string& head, int& k) {
  const auto open = name.find('(');
  const auto close = name.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open + 2) return false;
  head = name.substr(0, open);
  try {
    k = std::stoi(name.substr(open + 1, close - open - 1));
  } catch (...) {
    return false;
  }
  return k >= 1 && close == name.size() - 1;
}

}  // namespace detail

// Table lookup: does `name` act transitively on the spheres about 0 in R^n?
// The vocabulary is the identity components of the table plus O(n),
// Sp(m)U(1) (also written Sp(m).U(1)) and Sp(m)Sp(1). Unknown names are an
// error, not a false.
inline bool is_transitive_on_spheres(const std::string& name, int n) {
  if (n <= 1) throw std::domain_error("is_transitive_on_spheres: requires n >= 2");
  if (name == "G2") return n == 7;
  if (name == "Spin(7)") return n == 8;
  if (name == "Spin(9)") return n == 16;

  // composite names of case 3: Sp(m)U(1), Sp(m).U(1), Sp(m)Sp(1)
  for (const char* tail : {"U(1)", "Sp(1)"}) {
    for (const char* sep : {"", "."}) {
      const std::string suffix = std::string(sep) + tail;
      if (name.size() >= suffix.size() + 5 && name.rfind(suffix) == name.size() - suffix.size() &&
          name.rfind("Sp(", 0) == 0) {
        std::string head;
        int m = 0;
        if (detail::parse_parametric(name.substr(0, name.size() - suffix.size()), head, m) &&
            head == "Sp") {
          return n == 4 * m;
        }
      }
    }
  }

  std::string head;
  int m = 0;
  if (!detail::parse_parametric(name, head, m)) {
    throw std::invalid_argument("is_transitive_on_spheres: unknown group name '" + name + "'");
  }
  if (head == "SO" || head == "O") return n == m;
  if (head == "SU" || head == "U") return n == 2 * m && m >= 2;
  if (head == "Sp") return n == 4 * m;
  if (head == "Spin") return false;  // Spin(7)/Spin(9) handled above; others absent
  throw std::invalid_argument("is_transitive_on_spheres: unknown group name '" + name + "'");
}

// Convenience overload for sampler specs.
inline bool is_transitive_on_spheres(const GroupSpec& spec, int n) {
  return is_transitive_on_spheres(spec.name(), n);
}

// Resolve a classification name to a samplable GroupSpec. Exceptional groups
// are recognized but have no sampler and raise no_sampler_error explicitly.
inline GroupSpec samplable_spec(const std::string& name, int n) {
  if (name == "G2" || name == "Spin(7)" || name == "Spin(9)") {
    throw no_sampler_error("no sampler for exceptional group " + name +
                           "; it is a table-only classification entry");
  }
  std::string head;
  int m = 0;
  if (!detail::parse_parametric(name, head, m)) {
    throw std::invalid_argument("samplable_spec: unknown group name '" + name + "'");
  }
  GroupSpec spec{GroupFamily::SO, 1};
  if (head == "SO") spec = GroupSpec::so(m);
  else if (head == "O") spec = GroupSpec::o(m);
  else if (head == "SU") spec = GroupSpec::su(m);
  else if (head == "U") spec = GroupSpec::u(m);
  else if (head == "Sp") spec = GroupSpec::sp(m);
  else throw std::invalid_argument("samplable_spec: unknown group name '" + name + "'");
  if (spec.ambient_dim() != n) {
    throw std::invalid_argument("samplable_spec: " + name + " does not act on R^" +
                                std::to_string(n));
  }
  return spec;
}

// JSON export with stable field names.
inline nlohmann::ordered_json classification_to_json(const std::vector<ClassificationEntry>& entries) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["case"] = e.case_id;
    j["n_predicate"] = e.n_predicate;
    j["K0"] = e.k0;
    j["extensions"] = e.extensions;
    j["sampler"] = e.sampler_available;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace mh

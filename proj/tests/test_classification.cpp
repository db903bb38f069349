#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "mh/classification.hpp"

using namespace mh;

namespace {

const ClassificationEntry* find_k0(const std::vector<ClassificationEntry>& entries,
                                   const std::string& k0) {
  for (const auto& e : entries) {
    if (e.k0 == k0) return &e;
  }
  return nullptr;
}

bool has_extension(const ClassificationEntry& e, const std::string& ext) {
  return std::find(e.extensions.begin(), e.extensions.end(), ext) != e.extensions.end();
}

}  // namespace

TEST_CASE("n = 3 admits exactly SO(3) and O(3)") {
  const auto entries = transitive_groups(3);
  REQUIRE(entries.size() == 1);
  REQUIRE(entries[0].k0 == "SO(3)");
  REQUIRE(has_extension(entries[0], "trivial"));
  REQUIRE(has_extension(entries[0], "-I"));  // O(3)
  REQUIRE(entries[0].sampler_available);
}

TEST_CASE("n = 7 includes G2 and G2 u (-I)G2") {
  const auto entries = transitive_groups(7);
  const auto* g2 = find_k0(entries, "G2");
  REQUIRE(g2 != nullptr);
  REQUIRE(has_extension(*g2, "trivial"));
  REQUIRE(has_extension(*g2, "-I"));
  REQUIRE_FALSE(g2->sampler_available);
  REQUIRE(find_k0(entries, "SO(7)") != nullptr);
}

TEST_CASE("n = 8 includes Spin(7) with trivial extension; n = 16 includes Spin(9)") {
  const auto e8 = transitive_groups(8);
  const auto* spin7 = find_k0(e8, "Spin(7)");
  REQUIRE(spin7 != nullptr);
  REQUIRE(spin7->extensions == std::vector<std::string>{"trivial"});

  const auto e16 = transitive_groups(16);
  const auto* spin9 = find_k0(e16, "Spin(9)");
  REQUIRE(spin9 != nullptr);
  REQUIRE(spin9->extensions == std::vector<std::string>{"trivial"});
  REQUIRE_FALSE(spin9->sampler_available);
}

TEST_CASE("n = 4 carries the full unitary and symplectic families") {
  const auto entries = transitive_groups(4);

  const auto* su2 = find_k0(entries, "SU(2)");
  REQUIRE(su2 != nullptr);
  REQUIRE(has_extension(*su2, "Z_l"));
  REQUIRE(has_extension(*su2, "D_l"));

  const auto* u2 = find_k0(entries, "U(2)");
  REQUIRE(u2 != nullptr);
  REQUIRE(has_extension(*u2, "trivial"));
  REQUIRE(has_extension(*u2, "alpha"));

  const auto* sp1 = find_k0(entries, "Sp(1)");
  REQUIRE(sp1 != nullptr);
  for (const char* ext : {"Z_l", "D*_l", "T*", "O*", "I*"}) {
    REQUIRE(has_extension(*sp1, ext));
  }

  const auto* sp1u1 = find_k0(entries, "Sp(1)U(1)");
  REQUIRE(sp1u1 != nullptr);
  REQUIRE(has_extension(*sp1u1, "trivial"));
  REQUIRE(has_extension(*sp1u1, "beta"));

  const auto* sp1sp1 = find_k0(entries, "Sp(1)Sp(1)");
  REQUIRE(sp1sp1 != nullptr);
  REQUIRE(sp1sp1->extensions == std::vector<std::string>{"trivial"});
}

TEST_CASE("classification is a pure function containing SO(n), O(n) for all n") {
  for (int n = 2; n <= 20; ++n) {
    const auto a = transitive_groups(n);
    const auto b = transitive_groups(n);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].case_id == b[i].case_id);
      REQUIRE(a[i].k0 == b[i].k0);
      REQUIRE(a[i].extensions == b[i].extensions);
    }
    const auto* so = find_k0(a, "SO(" + std::to_string(n) + ")");
    REQUIRE(so != nullptr);
    REQUIRE(has_extension(*so, "-I"));
  }
}

TEST_CASE("transitivity lookups") {
  REQUIRE(is_transitive_on_spheres("SU(2)", 4));
  REQUIRE_FALSE(is_transitive_on_spheres("SU(2)", 3));
  REQUIRE(is_transitive_on_spheres("Spin(7)", 8));
  REQUIRE_FALSE(is_transitive_on_spheres("Spin(7)", 7));
  REQUIRE(is_transitive_on_spheres("SO(5)", 5));
  REQUIRE(is_transitive_on_spheres("O(5)", 5));
  REQUIRE(is_transitive_on_spheres("Sp(2)", 8));
  REQUIRE(is_transitive_on_spheres("Sp(2)U(1)", 8));
  REQUIRE(is_transitive_on_spheres("Sp(2).U(1)", 8));
  REQUIRE(is_transitive_on_spheres("Sp(2)Sp(1)", 8));
  REQUIRE_FALSE(is_transitive_on_spheres("Sp(2)", 6));
  REQUIRE(is_transitive_on_spheres("G2", 7));
  REQUIRE_FALSE(is_transitive_on_spheres("G2", 8));
  REQUIRE_THROWS_AS(is_transitive_on_spheres("F4", 26), std::invalid_argument);
  REQUIRE_THROWS_AS(is_transitive_on_spheres("SO(3)", 1), std::domain_error);
}

TEST_CASE("table rejects n <= 1") {
  REQUIRE_THROWS_AS(transitive_groups(1), std::domain_error);
  REQUIRE_THROWS_AS(transitive_groups(0), std::domain_error);
}

TEST_CASE("JSON export uses the stable schema") {
  const auto j = classification_to_json(transitive_groups(7));
  REQUIRE(j.is_array());
  bool saw_g2 = false;
  for (const auto& entry : j) {
    REQUIRE(entry.contains("case"));
    REQUIRE(entry.contains("n_predicate"));
    REQUIRE(entry.contains("K0"));
    REQUIRE(entry.contains("extensions"));
    REQUIRE(entry.contains("sampler"));
    if (entry["K0"] == "G2") saw_g2 = true;
  }
  REQUIRE(saw_g2);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framestarter/group.hpp"
#include "framestarter/starter.hpp"

namespace framestarter {

/// Type h^u of a cyclic frame starter: g = h * u, H the order-h subgroup of Z_g.
struct StarterType {
  std::int64_t h = 1;
  std::int64_t u = 2;

  std::int64_t g() const noexcept { return h * u; }
  /// g - h is even, the necessary parity for any frame starter of this type.
  bool admissible() const noexcept { return (g() - h) % 2 == 0; }
  std::string to_string() const { return std::to_string(h) + "^" + std::to_string(u); }

  /// Parses "h^u"; throws ParseError on malformed text, InvalidTypeError on h < 1 or u < 2.
  static StarterType parse(const std::string& text);

  friend bool operator==(const StarterType&, const StarterType&) = default;
  friend auto operator<=>(const StarterType&, const StarterType&) = default;
};

/**
 * The nonexistence arguments the library knows. The first four are the
 * classical order/quotient obstructions, the next three the congruence
 * arguments for cyclic skew frame starters, the last a completed search.
 */
enum class Rule {
  frame_parity,         // |G| = 2U, |H| = 2t, t odd, U/t = 2,3 mod 4: no frame starter
  strong_index_five,    // |G| = 5t, |H| = t, t odd: no strong frame starter
  strong_quotient_z4,   // |H| = t even, G/H = Z_4: no strong frame starter
  strong_index_six,     // |G| = 6t, |H| = t: no strong frame starter
  skew_quadratic_sum,   // g odd, (2gh-1)(g-h) != 0 mod 6h
  skew_mod3_census,     // type h^{3t}, ht != 0 mod 3
  skew_mod4_census,     // type h^{4t}, ht != 0 mod 4
  exhaustive_search,
};

std::string to_string(Rule r);

struct NonexistenceCertificate {
  StarterType type;
  /// No starter with this property (or any stronger one) exists.
  Property level = Property::skew;
  Rule rule = Rule::exhaustive_search;
  /// The rule's hypothesis instantiated with concrete numbers.
  std::string statement;
  /// Named special case of the rule, if the type falls into one.
  std::optional<std::string> special_case;
  bool conclusive = true;

  /// True when this certificate forbids a starter that has property `p`.
  bool rules_out(Property p) const noexcept { return conclusive && p >= level; }
};

/// Result of a single predicate: not applicable (with reason), silent, or a certificate.
struct Assessment {
  bool applicable = false;
  std::string reason;
  std::optional<NonexistenceCertificate> certificate;

  explicit operator bool() const noexcept { return certificate.has_value(); }
};

Assessment test_quadratic_congruence(const StarterType& t);
Assessment test_mod3_census(const StarterType& t);
Assessment test_mod4_census(const StarterType& t);
/// First applicable classical obstruction for a cyclic type.
Assessment test_prior_theorems(const StarterType& t);
/// Classical obstructions for an arbitrary (G, H); G/H = Z_4 is tested structurally.
Assessment test_prior_theorems(const SubgroupSpec& h);

/**
 * All predicates, strongest conclusion first (frame, then strong, then skew
 * level). `certificate` is empty when the type is open.
 */
struct Certification {
  StarterType type;
  std::optional<NonexistenceCertificate> certificate;
  std::vector<NonexistenceCertificate> all;

  bool open() const noexcept { return !certificate.has_value(); }
};

Certification certify(const StarterType& t);

/**
 * Existence side: the F_q x Z_2 construction gives a cyclic skew frame
 * starter of type 2^q for every prime q = 1 mod 4. Returns its instantiated
 * statement, or nullopt when the type is not covered.
 */
std::optional<std::string> known_construction(const StarterType& t);

/// {{x, -x} : x in G \ H}. Needs |G| odd.
FrameStarter patterned_starter(const SubgroupSpec& h);

/**
 * Strong frame starter -> adder of the patterned starter, a_i = (x_i + y_i) / 2
 * attached to the patterned pair {(x_i - y_i)/2, (y_i - x_i)/2}.
 */
Adder strong_to_adder(const FrameStarter& s);
/// Inverse of strong_to_adder: {{s_i + a_i, t_i + a_i}}.
FrameStarter adder_to_strong(const Adder& a);

/// Sum of j^2 over j in G \ H, j taken in [0, g), computed as g(2gh-1)(g-h)/(6h).
std::int64_t sum_of_squares_closed_form(std::int64_t g, std::int64_t h);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// One linear relation between census counts that every qualifying starter satisfies.
struct CensusEquation {
  std::string name;
  std::string relation;  // human-readable form, e.g. "2a00 + a01 + a02 = g/3 - h"
  std::int64_t lhs = 0;
  Fraction rhs;
  /// Holds for every frame starter (false) or only for skew ones (true).
  bool needs_skew = false;

  bool holds() const noexcept { return lhs * rhs.den == rhs.num; }
};

/// The census relations need H inside the kernel of Z_g -> Z_m, i.e. m | u. m is 3 or 4.
bool census_equations_apply(std::int64_t g, std::int64_t h, std::int64_t m);

/**
 * The census relations for m = census.modulus, including the derived
 * identity (3 a00 = h(t-3)/2 for m = 3, a13 = g/16 for m = 4).
 * Throws InvalidTypeError when census_equations_apply is false.
 */
std::vector<CensusEquation> census_equations(const TypeCensus& census, std::int64_t g, std::int64_t h);

}  // namespace framestarter

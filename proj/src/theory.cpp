#include "framestarter/theory.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "framestarter/errors.hpp"

namespace framestarter {

namespace {

using i128 = __int128;

std::string str(i128 v) {
  if (v == 0) return "0";
  bool negative = v < 0;
  std::string out;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    out.push_back(static_cast<char>('0' + (negative ? -digit : digit)));
    v /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("type", "bad " + what + " '" + text + "' (expected h^u)");
  }
  return value;
}

NonexistenceCertificate make_cert(const StarterType& t, Property level, Rule rule, std::string statement,
                                  std::optional<std::string> special = std::nullopt) {
  NonexistenceCertificate c;
  c.type = t;
  c.level = level;
  c.rule = rule;
  c.statement = std::move(statement);
  c.special_case = std::move(special);
  return c;
}

Assessment not_applicable(std::string reason) {
  Assessment a;
  a.reason = std::move(reason);
  return a;
}

Assessment applicable_none(std::string reason) {
  Assessment a;
  a.applicable = true;
  a.reason = std::move(reason);
  return a;
}

Assessment certified(NonexistenceCertificate c) {
  Assessment a;
  a.applicable = true;
  a.reason = c.statement;
  a.certificate = std::move(c);
  return a;
}

Assessment prior_by_orders(const StarterType& t, std::optional<bool> quotient_is_z4) {
  const std::int64_t g = t.g(), h = t.h, u = t.u;
  if (h % 4 == 2 && (u % 4 == 2 || u % 4 == 3)) {
    std::ostringstream os;
    os << "|G| = 2*" << g / 2 << ", |H| = 2*" << h / 2 << " with " << h / 2 << " odd, " << g / 2 << "/" << h / 2
       << " = " << u << " = " << u % 4 << " (mod 4)";
    return certified(make_cert(t, Property::frame, Rule::frame_parity, os.str()));
  }
  if (u == 5 && h % 2 == 1) {
    std::ostringstream os;
    os << "|G| = 5*" << h << ", |H| = " << h << " odd";
    return certified(make_cert(t, Property::strong, Rule::strong_index_five, os.str()));
  }
  if (u == 4 && h % 2 == 0 && quotient_is_z4.value_or(true)) {
    std::ostringstream os;
    os << "|G| = 4*" << h << ", |H| = " << h << " even, G/H = Z_4";
    return certified(make_cert(t, Property::strong, Rule::strong_quotient_z4, os.str()));
  }
  if (u == 6) {
    std::ostringstream os;
    os << "|G| = 6*" << h << ", |H| = " << h;
    return certified(make_cert(t, Property::strong, Rule::strong_index_six, os.str()));
  }
  return applicable_none("no classical order obstruction applies to " + t.to_string());
}

}  // namespace

std::string to_string(Rule r) {
  switch (r) {
    case Rule::frame_parity: return "frame-parity";
    case Rule::strong_index_five: return "strong-index-5";
    case Rule::strong_quotient_z4: return "strong-quotient-z4";
    case Rule::strong_index_six: return "strong-index-6";
    case Rule::skew_quadratic_sum: return "skew-quadratic-sum";
    case Rule::skew_mod3_census: return "skew-mod3-census";
    case Rule::skew_mod4_census: return "skew-mod4-census";
    case Rule::exhaustive_search: return "exhaustive-search";
  }
  return "?";
}

StarterType StarterType::parse(const std::string& text) {
  auto caret = text.find('^');
  if (caret == std::string::npos) throw ParseError("type", "expected h^u, got '" + text + "'");
  StarterType t{parse_int(text.substr(0, caret), "h"), parse_int(text.substr(caret + 1), "u")};
  if (t.h < 1) throw InvalidTypeError("h must be >= 1 in type " + text);
  if (t.u < 2) throw InvalidTypeError("u must be >= 2 in type " + text);
  if (t.h > kMaxGroupOrder / t.u) throw InvalidTypeError("group order of type " + text + " exceeds 2^31");
  return t;
}

Assessment test_quadratic_congruence(const StarterType& t) {
  const i128 g = t.g(), h = t.h;
  if (g % 2 == 0) return not_applicable("g = " + str(g) + " is even");
  const i128 a = 2 * g * h - 1;
  const i128 b = g - h;
  const i128 m = 6 * h;
  const i128 residue = (a * b) % m;
  std::ostringstream os;
  os << "(2gh-1)(g-h) = " << str(a) << "*" << str(b) << " = " << str(a * b) << " = " << str(residue) << " (mod "
     << str(m) << ")";
  if (residue == 0) return applicable_none(os.str());
  os << " != 0, so the squares of a half system of G\\H do not sum to 0 mod " << str(g);

  std::optional<std::string> special;
  if (t.h == 1 && t.g() % 3 == 0) {
    special = "cyclic skew starter in Z_3t with t = " + std::to_string(t.g() / 3) + " odd";
  } else if (t.h == 3 && (t.u % 6 == 3 || t.u % 6 == 5)) {
    special = "type 3^t with t = " + std::to_string(t.u) + " = 3 or 5 (mod 6)";
  } else if (t.h == 5 && t.u % 6 == 3) {
    special = "type 5^t with t = " + std::to_string(t.u) + " = 3 (mod 6)";
  }
  return certified(make_cert(t, Property::skew, Rule::skew_quadratic_sum, os.str(), special));
}

Assessment test_mod3_census(const StarterType& t) {
  if (t.u % 3 != 0) return not_applicable("u = " + std::to_string(t.u) + " is not divisible by 3");
  const std::int64_t tt = t.u / 3;
  std::ostringstream os;
  os << "type " << t.h << "^(3*" << tt << ") in Z_" << t.g() << ": ht = " << t.h * tt << " = " << (t.h * tt) % 3
     << " (mod 3)";
  if ((t.h * tt) % 3 == 0) return applicable_none(os.str());
  os << " != 0, but counting pairs by residue mod 3 forces 3 a00 = h(t-3)/2";
  std::optional<std::string> special;
  if (t.h == 2 || t.h == 4) special = "type " + std::to_string(t.h) + "^3t with t = " + std::to_string(tt) + " != 0 (mod 3)";
  return certified(make_cert(t, Property::skew, Rule::skew_mod3_census, os.str(), special));
}

Assessment test_mod4_census(const StarterType& t) {
  if (t.u % 4 != 0) return not_applicable("u = " + std::to_string(t.u) + " is not divisible by 4");
  const std::int64_t tt = t.u / 4;
  std::ostringstream os;
  os << "type " << t.h << "^(4*" << tt << ") in Z_" << t.g() << ": ht = " << t.h * tt << " = " << (t.h * tt) % 4
     << " (mod 4)";
  if ((t.h * tt) % 4 == 0) return applicable_none(os.str());
  os << " != 0, but counting pairs by residue mod 4 forces a13 = g/16 = " << t.g() << "/16";
  std::optional<std::string> special;
  if (t.h == 2 && tt % 2 == 1) special = "type 2^4t with t = " + std::to_string(tt) + " odd";
  return certified(make_cert(t, Property::skew, Rule::skew_mod4_census, os.str(), special));
}

Assessment test_prior_theorems(const StarterType& t) { return prior_by_orders(t, std::nullopt); }

Assessment test_prior_theorems(const SubgroupSpec& sub) {
  const GroupSpec& G = sub.group();
  StarterType t{sub.order(), sub.index()};
  bool quotient_z4 = false;
  if (t.u == 4) {
    // G/H has order 4; it is Z_4 exactly when some x has 2x outside H.
    for (std::int64_t i = 0; i < G.order() && !quotient_z4; ++i) {
      Element x = G.at(i);
      quotient_z4 = !sub.contains(add(G, x, x));
    }
  }
  return prior_by_orders(t, quotient_z4);
}

Certification certify(const StarterType& t) {
  Certification c;
  c.type = t;
  for (const Assessment& a :
       {test_prior_theorems(t), test_quadratic_congruence(t), test_mod3_census(t), test_mod4_census(t)}) {
    if (a.certificate) c.all.push_back(*a.certificate);
  }
  // Strongest level first; ties keep predicate order.
  std::stable_sort(c.all.begin(), c.all.end(),
                   [](const auto& x, const auto& y) { return x.level < y.level; });
  if (!c.all.empty()) c.certificate = c.all.front();
  return c;
}

std::optional<std::string> known_construction(const StarterType& t) {
  const std::int64_t q = t.u;
  if (t.h != 2 || q % 4 != 1) return std::nullopt;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return std::nullopt;
  return "q = " + std::to_string(q) + " is a prime with q = 1 mod 4, so F_q x Z_2 = Z_" + std::to_string(t.g()) +
         " carries a skew frame starter of type 2^" + std::to_string(q);
}

FrameStarter patterned_starter(const SubgroupSpec& sub) {
  const GroupSpec& G = sub.group();
  if (G.order() % 2 == 0) throw UnsupportedOperationError("patterned starter needs a group of odd order");
  std::vector<Pair> pairs;
  for (std::int64_t i = 0; i < G.order(); ++i) {
    Element x = G.at(i);
    if (sub.contains(x)) continue;
    Element y = neg(G, x);
    if (x < y) pairs.push_back(Pair{x, y});
  }
  return FrameStarter(sub, std::move(pairs));
}

Adder strong_to_adder(const FrameStarter& s) {
  const GroupSpec& G = s.group();
  if (G.order() % 2 == 0) throw UnsupportedOperationError("adder conversion needs a group of odd order");
  auto report = verify_strong(s);
  if (!report.is_strong) {
    throw PreconditionError("starter is not strong: " + (report.witness ? report.witness->detail : std::string("?")));
  }
  Adder adder{s.subgroup(), {}};
  for (const auto& [x, y] : s.pairs()) {
    Element a = halve(G, add(G, x, y));
    Element si = halve(G, sub(G, x, y));
    adder.entries.push_back(AdderEntry{make_pair(si, neg(G, si)), std::move(a)});
  }
  return adder;
}

FrameStarter adder_to_strong(const Adder& a) {
  const GroupSpec& G = a.subgroup.group();
  if (G.order() % 2 == 0) throw UnsupportedOperationError("adder conversion needs a group of odd order");
  for (const auto& e : a.entries) {
    if (!(e.base.second == neg(G, e.base.first))) {
      throw PreconditionError("adder base pair {" + G.format(e.base.first) + "," + G.format(e.base.second) +
                              "} is not of the form {x,-x}");
    }
  }
  if (!is_valid_adder(a)) throw PreconditionError("adder translates are not distinct elements outside H");
  std::vector<Pair> pairs;
  for (const auto& e : a.entries) {
    pairs.push_back(make_pair(add(G, e.base.first, e.translate), add(G, e.base.second, e.translate)));
  }
  FrameStarter s(a.subgroup, std::move(pairs));
  auto report = verify_strong(s);
  if (!report.is_strong) {
    throw PreconditionError("translated patterned starter is not a strong frame starter: " +
                            (report.witness ? report.witness->detail : std::string("?")));
  }
  return s;
}

std::int64_t sum_of_squares_closed_form(std::int64_t g, std::int64_t h) {
  if (g < 1 || h < 1 || g % h != 0) {
    throw InvalidTypeError(std::to_string(h) + " does not divide " + std::to_string(g));
  }
  if (g % 2 == 0) throw UnsupportedOperationError("closed form is stated for odd g");
  const i128 G = g, Hh = h;
  const i128 num = G * (2 * G * Hh - 1) * (G - Hh);
  const i128 value = num / (6 * Hh);
  if (value > std::numeric_limits<std::int64_t>::max()) throw UnsupportedOperationError("sum of squares overflows 64 bits");
  return static_cast<std::int64_t>(value);
}

bool census_equations_apply(std::int64_t g, std::int64_t h, std::int64_t m) {
  return (m == 3 || m == 4) && h >= 1 && g % h == 0 && (g / h) % m == 0;
}

std::vector<CensusEquation> census_equations(const TypeCensus& c, std::int64_t g, std::int64_t h) {
  const std::int64_t m = c.modulus;
  if (!census_equations_apply(g, h, m)) {
    throw InvalidTypeError("census relations mod " + std::to_string(m) + " need type h^(" + std::to_string(m) +
                           "t); got g=" + std::to_string(g) + ", h=" + std::to_string(h));
  }
  auto a = [&](std::int64_t i, std::int64_t j) { return c.count(i, j); };
  const std::int64_t t = g / h / m;
  std::vector<CensusEquation> eq;
  auto push = [&](std::string name, std::string rel, std::int64_t lhs, Fraction rhs, bool skew) {
    eq.push_back(CensusEquation{std::move(name), std::move(rel), lhs, rhs, skew});
  };
  if (m == 3) {
    push("elements-0", "2a00 + a01 + a02 = g/3 - h", 2 * a(0, 0) + a(0, 1) + a(0, 2), {g - 3 * h, 3}, false);
    push("elements-1", "2a11 + a01 + a12 = g/3", 2 * a(1, 1) + a(0, 1) + a(1, 2), {g, 3}, false);
    push("elements-2", "2a22 + a02 + a12 = g/3", 2 * a(2, 2) + a(0, 2) + a(1, 2), {g, 3}, false);
    push("differences-0", "a00 + a11 + a22 = (g/3 - h)/2", a(0, 0) + a(1, 1) + a(2, 2), {g - 3 * h, 6}, false);
    push("differences-nonzero", "a01 + a02 + a12 = g/3", a(0, 1) + a(0, 2) + a(1, 2), {g, 3}, false);
    push("sums-0", "a00 + a12 = (g/3 - h)/2", a(0, 0) + a(1, 2), {g - 3 * h, 6}, true);
    push("a00-identity", "3a00 = h(t-3)/2", 3 * a(0, 0), {h * (t - 3), 2}, true);
  } else {
    push("elements-0", "2a00 + a01 + a02 + a03 = g/4 - h", 2 * a(0, 0) + a(0, 1) + a(0, 2) + a(0, 3), {g - 4 * h, 4},
         false);
    push("elements-1", "2a11 + a01 + a12 + a13 = g/4", 2 * a(1, 1) + a(0, 1) + a(1, 2) + a(1, 3), {g, 4}, false);
    push("elements-2", "2a22 + a02 + a12 + a23 = g/4", 2 * a(2, 2) + a(0, 2) + a(1, 2) + a(2, 3), {g, 4}, false);
    push("elements-3", "2a33 + a03 + a13 + a23 = g/4", 2 * a(3, 3) + a(0, 3) + a(1, 3) + a(2, 3), {g, 4}, false);
    push("differences-0", "a00 + a11 + a22 + a33 = (g/4 - h)/2", a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3),
         {g - 4 * h, 8}, false);
    push("differences-2", "a02 + a13 = g/8", a(0, 2) + a(1, 3), {g, 8}, false);
    push("differences-odd", "a01 + a12 + a23 + a03 = g/4", a(0, 1) + a(1, 2) + a(2, 3) + a(0, 3), {g, 4}, false);
    push("sums-0", "a00 + a22 + a13 = (g/4 - h)/2", a(0, 0) + a(2, 2) + a(1, 3), {g - 4 * h, 8}, true);
    push("sums-2", "a02 + a11 + a33 = g/8", a(0, 2) + a(1, 1) + a(3, 3), {g, 8}, true);
    push("a13-identity", "a13 = g/16", a(1, 3), {g, 16}, true);
  }
  return eq;
}

}  // namespace framestarter

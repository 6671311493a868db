#include "framestarter/group.hpp"

#include <algorithm>
#include <sstream>

#include "framestarter/errors.hpp"

namespace framestarter {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void require_same_arity(const GroupSpec& spec, const Element& e) {
  if (e.coords.size() != spec.rank()) {
    throw StructuralError("element has " + std::to_string(e.coords.size()) +
                          " coordinates, group " + spec.to_string() + " has " +
                          std::to_string(spec.rank()) + " factors");
  }
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw StructuralError("group needs at least one cyclic factor");
  order_ = 1;
  for (std::int64_t m : factors_) {
    if (m < 2) throw StructuralError("cyclic factor must be >= 2, got " + std::to_string(m));
    if (order_ > kMaxGroupOrder / m) {
      throw StructuralError("group order exceeds 2^31");
    }
    order_ *= m;
  }
}

Element GroupSpec::element(const std::vector<std::int64_t>& coords) const {
  Element e(coords);
  require_same_arity(*this, e);
  for (std::size_t i = 0; i < factors_.size(); ++i) e.coords[i] = mod(e.coords[i], factors_[i]);
  return e;
}

bool GroupSpec::contains(const Element& e) const noexcept {
  if (e.coords.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (e.coords[i] < 0 || e.coords[i] >= factors_[i]) return false;
  }
  return true;
}

std::int64_t GroupSpec::index(const Element& e) const {
  require_same_arity(*this, e);
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + e.coords[i];
  return idx;
}

Element GroupSpec::at(std::int64_t idx) const {
  if (idx < 0 || idx >= order_) throw StructuralError("element index out of range");
  Element e(std::vector<std::int64_t>(factors_.size()));
  for (std::size_t i = factors_.size(); i-- > 0;) {
    e.coords[i] = idx % factors_[i];
    idx /= factors_[i];
  }
  return e;
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << "xZ";
    else os << "Z";
    os << factors_[i];
  }
  return os.str();
}

std::string GroupSpec::format(const Element& e) const {
  if (is_cyclic() && e.coords.size() == 1) return std::to_string(e.coords[0]);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) os << ',';
    os << e.coords[i];
  }
  os << ')';
  return os.str();
}

Element add(const GroupSpec& spec, const Element& a, const Element& b) {
  require_same_arity(spec, a);
  require_same_arity(spec, b);
  Element r(a.coords);
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = mod(a.coords[i] + b.coords[i], spec.factors()[i]);
  return r;
}

Element neg(const GroupSpec& spec, const Element& a) {
  require_same_arity(spec, a);
  Element r(a.coords);
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = mod(-a.coords[i], spec.factors()[i]);
  return r;
}

Element sub(const GroupSpec& spec, const Element& a, const Element& b) {
  require_same_arity(spec, a);
  require_same_arity(spec, b);
  Element r(a.coords);
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = mod(a.coords[i] - b.coords[i], spec.factors()[i]);
  return r;
}

Element halve(const GroupSpec& spec, const Element& a) {
  if (spec.order() % 2 == 0) {
    throw UnsupportedOperationError("halving needs a group of odd order, " + spec.to_string() + " has even order");
  }
  require_same_arity(spec, a);
  // In Z_m with m odd, 2^{-1} = (m+1)/2.
  Element r(a.coords);
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    const std::int64_t m = spec.factors()[i];
    r.coords[i] = mod(a.coords[i], m) * ((m + 1) / 2) % m;
  }
  return r;
}

std::int64_t reduce_mod(const GroupSpec& spec, const Element& a, std::int64_t m) {
  if (!spec.is_cyclic()) throw InvalidHomomorphismError("reduction mod m is only defined here for cyclic groups");
  if (m < 2 || spec.order() % m != 0) {
    throw InvalidHomomorphismError(std::to_string(m) + " does not divide " + std::to_string(spec.order()));
  }
  require_same_arity(spec, a);
  return mod(a.coords[0], m);
}

SubgroupSpec::SubgroupSpec(GroupSpec group, std::vector<Element> generators, std::vector<Element> elements)
    : group_(std::move(group)), generators_(std::move(generators)), elements_(std::move(elements)) {
  if (generators_.empty()) throw StructuralError("subgroup needs at least one generator");
  indices_.reserve(elements_.size());
  for (const auto& e : elements_) {
    if (!group_.contains(e)) throw StructuralError("subgroup element outside " + group_.to_string());
    indices_.push_back(group_.index(e));
  }
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  elements_.clear();
  for (std::int64_t idx : indices_) elements_.push_back(group_.at(idx));
  if (indices_.empty() || indices_.front() != 0) throw StructuralError("subgroup must contain the identity");
  if (group_.order() % order() != 0) throw InvalidTypeError("subgroup order does not divide group order");
}

bool SubgroupSpec::contains(const Element& e) const {
  return group_.contains(e) && contains_index(group_.index(e));
}

bool SubgroupSpec::contains_index(std::int64_t idx) const {
  return std::binary_search(indices_.begin(), indices_.end(), idx);
}

SubgroupSpec cyclic_subgroup(const GroupSpec& spec, std::int64_t h) {
  if (!spec.is_cyclic()) throw InvalidTypeError("cyclic_subgroup needs a cyclic group");
  if (h < 1 || spec.order() % h != 0) {
    throw InvalidTypeError("subgroup order " + std::to_string(h) + " does not divide " + std::to_string(spec.order()));
  }
  const std::int64_t r = spec.order() / h;
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(h));
  for (std::int64_t i = 0; i < h; ++i) elements.push_back(Element{i * r});
  return SubgroupSpec(spec, {Element{h == 1 ? 0 : r}}, std::move(elements));
}

SubgroupSpec generated_subgroup(const GroupSpec& spec, const std::vector<Element>& gens) {
  if (gens.empty()) throw StructuralError("generated_subgroup needs at least one generator");
  for (const auto& g : gens) {
    if (!spec.contains(g)) throw StructuralError("generator " + spec.format(g) + " is not an element of " + spec.to_string());
  }
  std::vector<char> seen(static_cast<std::size_t>(spec.order()), 0);
  std::vector<Element> frontier{spec.zero()};
  std::vector<Element> elements{spec.zero()};
  seen[0] = 1;
  while (!frontier.empty()) {
    Element x = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : gens) {
      Element y = add(spec, x, g);
      auto idx = static_cast<std::size_t>(spec.index(y));
      if (!seen[idx]) {
        seen[idx] = 1;
        elements.push_back(y);
        frontier.push_back(std::move(y));
      }
    }
  }
  return SubgroupSpec(spec, gens, std::move(elements));
}

}  // namespace framestarter

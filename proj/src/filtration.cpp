#include "espo/filtration.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "espo/errors.hpp"

namespace espo {

const Rational& RingElement::scalar() const {
  if (auto* q = std::get_if<Rational>(&value_)) return *q;
  throw ValidationError("ring element is not a scalar");
}

const std::vector<RingElement>& RingElement::children() const {
  if (auto* c = std::get_if<std::vector<RingElement>>(&value_)) return *c;
  throw ValidationError("ring element has no children");
}

std::size_t RingElement::hash() const {
  if (is_scalar()) return hash_value(scalar());
  std::size_t seed = 0x51ed;
  for (const auto& c : children()) hash_combine(seed, c.hash());
  return seed;
}

std::string RingElement::to_string() const {
  if (is_scalar()) return espo::to_string(scalar());
  std::string out = "[";
  for (std::size_t i = 0; i < children().size(); ++i) {
    if (i) out += ',';
    out += children()[i].to_string();
  }
  return out + "]";
}

bool operator<(const RingElement& a, const RingElement& b) {
  if (a.value_.index() != b.value_.index()) return a.value_.index() < b.value_.index();
  if (a.is_scalar()) return a.scalar() < b.scalar();
  return a.children() < b.children();
}

Integer LevelShape::size() const {
  Integer total = 1;
  for (const auto& [slot, bound] : bounds) total *= 2 * bound + 1;
  return total;
}

bool shape_subset(const LevelShape& a, const LevelShape& b) {
  // Each generator scale_a * e_s must be a multiple of scale_b, and the
  // extreme coefficient must fit in b's bound for that slot.
  const Rational ratio = a.scale / b.scale;
  for (const auto& [slot, bound] : a.bounds) {
    if (bound == 0) continue;
    if (!is_integer(ratio)) return false;
    auto it = b.bounds.find(slot);
    const Integer outer = it == b.bounds.end() ? Integer(0) : it->second;
    if (bound * abs(Integer(ratio.get_num())) > outer) return false;
  }
  return true;
}

LevelShape shape_sumset(const LevelShape& a) {
  LevelShape out = a;
  for (auto& [slot, bound] : out.bounds) bound *= 2;
  return out;
}

LevelShape shape_scaled(const LevelShape& a, const Integer& c) {
  LevelShape out = a;
  if (c == 0) {
    for (auto& [slot, bound] : out.bounds) bound = 0;
    return out;
  }
  out.scale *= abs(c);
  return out;
}

FiltrationSpec FiltrationSpec::base() { return FiltrationSpec{}; }

FiltrationSpec FiltrationSpec::poly(const FiltrationSpec& inner) {
  FiltrationSpec f;
  f.kind_ = Kind::poly;
  f.inner_ = std::make_shared<const FiltrationSpec>(inner);
  return f;
}

FiltrationSpec FiltrationSpec::localize(const FiltrationSpec& inner, Integer a, unsigned k) {
  if (k < 1) throw ValidationError("localize shift k must be >= 1");
  if (a == 0) throw ValidationError("cannot localize at 0");
  FiltrationSpec f;
  f.kind_ = Kind::localize;
  f.inner_ = std::make_shared<const FiltrationSpec>(inner);
  f.a_ = std::move(a);
  f.k_ = k;
  return f;
}

FiltrationSpec FiltrationSpec::module_ext(const FiltrationSpec& inner, StructureConstants constants) {
  const std::size_t d = constants.size();
  if (d == 0) throw ValidationError("module extension needs at least one generator");
  for (const auto& row : constants) {
    if (row.size() != d) throw ValidationError("structure constants must be d x d x d");
    for (const auto& col : row)
      if (col.size() != d) throw ValidationError("structure constants must be d x d x d");
  }
  FiltrationSpec f;
  f.kind_ = Kind::module_ext;
  f.inner_ = std::make_shared<const FiltrationSpec>(inner);
  f.constants_ = std::move(constants);
  return f;
}

FiltrationSpec FiltrationSpec::quaternion_order() {
  // Basis (1, i, j, k); table[x][y] = (sign, index) of x*y.
  const int table[4][4][2] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  StructureConstants c(4, std::vector<std::vector<Integer>>(4, std::vector<Integer>(4, Integer(0))));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) c[x][y][table[x][y][1]] = table[x][y][0];
  FiltrationSpec f = module_ext(base(), std::move(c));
  f.quaternion_ = true;
  return f;
}

const FiltrationSpec& FiltrationSpec::inner() const {
  if (!inner_) throw ValidationError("base filtration has no inner ring");
  return *inner_;
}

RingElement FiltrationSpec::zero() const {
  switch (kind_) {
    case Kind::base: return RingElement(Rational(0));
    case Kind::poly: return RingElement(std::vector<RingElement>{});
    case Kind::localize: return inner_->zero();
    case Kind::module_ext: return RingElement(std::vector<RingElement>(module_rank(), inner_->zero()));
  }
  return {};
}

RingElement FiltrationSpec::trim(std::vector<RingElement> coeffs) const {
  const RingElement z = inner_->zero();
  while (!coeffs.empty() && coeffs.back() == z) coeffs.pop_back();
  return RingElement(std::move(coeffs));
}

RingElement FiltrationSpec::add(const RingElement& x, const RingElement& y) const {
  switch (kind_) {
    case Kind::base: return RingElement(Rational(x.scalar() + y.scalar()));
    case Kind::localize: return inner_->add(x, y);
    case Kind::poly: {
      const auto& a = x.children();
      const auto& b = y.children();
      std::vector<RingElement> out(std::max(a.size(), b.size()), inner_->zero());
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] = inner_->add(out[i], a[i]);
        if (i < b.size()) out[i] = inner_->add(out[i], b[i]);
      }
      return trim(std::move(out));
    }
    case Kind::module_ext: {
      std::vector<RingElement> out(module_rank());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = inner_->add(x.children().at(i), y.children().at(i));
      return RingElement(std::move(out));
    }
  }
  return {};
}

RingElement FiltrationSpec::scale(const Rational& c, const RingElement& x) const {
  switch (kind_) {
    case Kind::base: return RingElement(Rational(c * x.scalar()));
    case Kind::localize: return inner_->scale(c, x);
    case Kind::poly: {
      std::vector<RingElement> out;
      for (const auto& child : x.children()) out.push_back(inner_->scale(c, child));
      return trim(std::move(out));
    }
    case Kind::module_ext: {
      std::vector<RingElement> out;
      for (const auto& child : x.children()) out.push_back(inner_->scale(c, child));
      return RingElement(std::move(out));
    }
  }
  return {};
}

RingElement FiltrationSpec::multiply(const RingElement& x, const RingElement& y) const {
  switch (kind_) {
    case Kind::base: return RingElement(Rational(x.scalar() * y.scalar()));
    case Kind::localize: return inner_->multiply(x, y);
    case Kind::poly: {
      const auto& a = x.children();
      const auto& b = y.children();
      if (a.empty() || b.empty()) return zero();
      std::vector<RingElement> out(a.size() + b.size() - 1, inner_->zero());
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = inner_->add(out[i + j], inner_->multiply(a[i], b[j]));
      return trim(std::move(out));
    }
    case Kind::module_ext: {
      const std::size_t d = module_rank();
      std::vector<RingElement> out(d, inner_->zero());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const RingElement prod = inner_->multiply(x.children().at(i), y.children().at(j));
          for (std::size_t t = 0; t < d; ++t)
            if (constants_[i][j][t] != 0) out[t] = inner_->add(out[t], inner_->scale(Rational(constants_[i][j][t]), prod));
        }
      return RingElement(std::move(out));
    }
  }
  return {};
}

LevelShape FiltrationSpec::shape(unsigned n) const {
  switch (kind_) {
    case Kind::base: {
      LevelShape s;
      s.bounds[{}] = pow(Integer(2), n);
      return s;
    }
    case Kind::localize: {
      LevelShape s = inner_->shape(2 * k_ * n);
      s.scale /= pow(Rational(a_), static_cast<long>(n));
      return s;
    }
    case Kind::poly:
    case Kind::module_ext: {
      const unsigned copies = kind_ == Kind::poly ? n : static_cast<unsigned>(module_rank());
      const LevelShape in = inner_->shape(n);
      LevelShape s;
      s.scale = in.scale;
      for (unsigned i = 0; i < copies; ++i)
        for (const auto& [slot, bound] : in.bounds) {
          std::vector<unsigned> key{i};
          key.insert(key.end(), slot.begin(), slot.end());
          s.bounds[key] = bound;
        }
      return s;
    }
  }
  return {};
}

bool FiltrationSpec::in_level(const RingElement& x, unsigned n) const {
  const LevelShape s = shape(n);
  std::vector<unsigned> path;
  std::function<bool(const RingElement&)> visit = [&](const RingElement& e) -> bool {
    if (e.is_scalar()) {
      if (e.scalar() == 0) return true;
      const Rational c = e.scalar() / s.scale;
      if (!is_integer(c)) return false;
      auto it = s.bounds.find(path);
      return it != s.bounds.end() && abs(c) <= Rational(it->second);
    }
    for (unsigned i = 0; i < e.children().size(); ++i) {
      path.push_back(i);
      const bool ok = visit(e.children()[i]);
      path.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return visit(x);
}

std::vector<RingElement> FiltrationSpec::level(unsigned n, std::size_t cap) const {
  if (level_size(n) > Integer(static_cast<unsigned long>(cap)))
    throw BudgetError("filtration level " + std::to_string(n) + " has " + espo::to_string(level_size(n)) +
                      " elements, above the cap " + std::to_string(cap));
  std::vector<RingElement> out;
  switch (kind_) {
    case Kind::base: {
      const long bound = pow(Integer(2), n).get_si();
      for (long v = -bound; v <= bound; ++v) out.emplace_back(Rational(v));
      break;
    }
    case Kind::localize: {
      const Rational s = 1 / pow(Rational(a_), static_cast<long>(n));
      for (const auto& e : inner_->level(2 * k_ * n, cap)) out.push_back(inner_->scale(s, e));
      break;
    }
    case Kind::poly:
    case Kind::module_ext: {
      const std::size_t copies = kind_ == Kind::poly ? n : module_rank();
      const auto in = inner_->level(n, cap);
      std::vector<std::size_t> idx(copies, 0);
      while (true) {
        std::vector<RingElement> coeffs;
        coeffs.reserve(copies);
        for (auto i : idx) coeffs.push_back(in[i]);
        out.push_back(kind_ == Kind::poly ? trim(std::move(coeffs)) : RingElement(std::move(coeffs)));
        std::size_t pos = 0;
        while (pos < copies && ++idx[pos] == in.size()) idx[pos++] = 0;
        if (pos == copies) break;
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string FiltrationSpec::describe() const {
  switch (kind_) {
    case Kind::base: return "Z[-2^n,2^n]";
    case Kind::poly: return "Poly(" + inner_->describe() + ")";
    case Kind::localize:
      return "Localize(" + inner_->describe() + ", a=" + espo::to_string(a_) + ", k=" + std::to_string(k_) + ")";
    case Kind::module_ext:
      if (quaternion_) return "QuaternionOrder(" + inner_->describe() + ")";
      return "ModuleExt(" + inner_->describe() + ", d=" + std::to_string(module_rank()) + ")";
  }
  return {};
}

std::vector<RingElement> filtration_level(const FiltrationSpec& spec, unsigned n) { return spec.level(n); }

namespace {

AxiomCheck run_check(std::string name, unsigned n_min, unsigned n_max, const std::function<bool(unsigned)>& pred) {
  AxiomCheck c{std::move(name), n_min, n_max, true, std::nullopt};
  for (unsigned n = n_min; n <= n_max; ++n)
    if (!pred(n)) {
      c.holds = false;
      c.first_failure = n;
      break;
    }
  return c;
}

}  // namespace

AxiomCheck check_cf0_chain(const FiltrationSpec& spec, unsigned n_max) {
  return run_check("CF0 chain O_n <= O_{n+1}", 0, n_max,
                   [&](unsigned n) { return shape_subset(spec.shape(n), spec.shape(n + 1)); });
}

AxiomCheck check_cf1(const FiltrationSpec& spec, unsigned k, unsigned n_max) {
  return run_check("CF1 O_n + O_n <= O_{n+" + std::to_string(k) + "}", 0, n_max,
                   [&](unsigned n) { return shape_subset(shape_sumset(spec.shape(n)), spec.shape(n + k)); });
}

AxiomCheck check_cf2(const FiltrationSpec& spec, const Integer& a, unsigned k, unsigned n_max) {
  return run_check("CF2 " + to_string(a) + " O_n <= O_{n+" + std::to_string(k) + "}", 0, n_max,
                   [&](unsigned n) { return shape_subset(shape_scaled(spec.shape(n), a), spec.shape(n + k)); });
}

AxiomCheck check_cf3_surrogate(const FiltrationSpec& spec, unsigned n_min, unsigned n_max) {
  return run_check("CF3 |O_{n+1}|^2 <= |O_n|^3", n_min, n_max, [&](unsigned n) {
    const Integer here = spec.level_size(n);
    const Integer next = spec.level_size(n + 1);
    return next * next <= here * here * here;
  });
}

}  // namespace espo

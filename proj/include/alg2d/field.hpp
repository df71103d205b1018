#pragma once

// Exact arithmetic in finite fields GF(p^k) with deterministic element order,
// subfield embeddings, and exhaustive root finding for polynomials of degree
// at most three.  Fields are immortal registry-owned objects; elements carry
// a pointer to their owner and a fixed-size coefficient vector (constant term
// first) reduced modulo a canonical irreducible modulus.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alg2d {

// Total extension degree cap: base fields up to GF(p^3) may need a cubic and
// then a quadratic extension during canonicalization (3 * 3 * 2 = 18).
inline constexpr int kMaxDegree = 18;

// Exhaustive scans (root finding, embeddings, square roots) refuse fields
// larger than this; keeps every search interactive at desk scale.
inline constexpr std::uint64_t kMaxScanOrder = std::uint64_t{1} << 24;

// Policy violation: a requested field or extension exceeds the desk-scale caps.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long mod_inv_prime(long a, long p) {
  // Extended Euclid; a != 0 mod p.
  long t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    long q = r / new_r;
    long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("element not invertible");
  return ((t % p) + p) % p;
}

}  // namespace detail

class Field;
class FieldElement;

FieldElement embed(const FieldElement& x, const Field* target);

class FieldElement {
 public:
  FieldElement() = default;

  const Field* field() const { return f_; }
  std::uint16_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const {
    for (auto v : c_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.f_ != b.f_) throw std::invalid_argument("mixed-field comparison");
    return a.c_ == b.c_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  // Total order: lexicographic on coefficient vectors, constant term first.
  friend bool operator<(const FieldElement& a, const FieldElement& b) {
    if (a.f_ != b.f_) throw std::invalid_argument("mixed-field comparison");
    return a.c_ < b.c_;
  }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) {
    return a < b || a == b;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;

  FieldElement inv() const;
  std::string to_string() const;

 private:
  friend class Field;
  const Field* f_ = nullptr;
  std::array<std::uint16_t, kMaxDegree> c_{};  // zero beyond degree k-1
};

class Field {
 public:
  // Create-or-fetch GF(p^k).  The modulus is the lexicographically least
  // monic irreducible polynomial of degree k over GF(p), coefficients
  // compared constant term first; degree one uses the polynomial x so prime
  // fields are plain residues.  Deterministic: same (p, k) always yields the
  // same object.
  static const Field* get(long p, int k);

  long p() const { return p_; }
  int k() const { return k_; }
  bool order_fits() const { return order_ != 0; }
  std::uint64_t order() const {
    if (!order_fits()) throw cap_error("field order exceeds 64 bits");
    return order_;
  }

  // Monic modulus coefficients, constant term first, length k+1.
  const std::vector<std::uint16_t>& modulus() const { return mod_; }

  FieldElement zero() const { return make({}); }
  FieldElement one() const { return from_int(1); }
  // Integer constant n mod p (negative n allowed).
  FieldElement from_int(long n) const {
    long r = ((n % p_) + p_) % p_;
    FieldElement e;
    e.f_ = this;
    e.c_[0] = static_cast<std::uint16_t>(r);
    return e;
  }
  // The class of x when k >= 2; the multiplicative generator is not implied.
  FieldElement gen() const {
    if (k_ < 2) throw std::invalid_argument("gen() requires an extension field");
    FieldElement e;
    e.f_ = this;
    e.c_[1] = 1;
    return e;
  }
  FieldElement from_coeffs(const std::vector<std::uint16_t>& c) const {
    if (static_cast<int>(c.size()) > k_)
      throw std::invalid_argument("too many coefficients for field degree");
    FieldElement e;
    e.f_ = this;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
      e.c_[i] = c[i];
    }
    return e;
  }

  // Enumeration by index: index = sum c_i * p^i, 0 <= index < order.
  FieldElement element_at(std::uint64_t index) const {
    if (!order_fits() || index >= order_)
      throw std::invalid_argument("element index out of range");
    FieldElement e;
    e.f_ = this;
    for (int i = 0; i < k_; ++i) {
      e.c_[static_cast<std::size_t>(i)] =
          static_cast<std::uint16_t>(index % static_cast<std::uint64_t>(p_));
      index /= static_cast<std::uint64_t>(p_);
    }
    return e;
  }
  std::uint64_t index_of(const FieldElement& x) const {
    if (x.field() != this) throw std::invalid_argument("mixed-field index_of");
    std::uint64_t idx = 0;
    for (int i = k_ - 1; i >= 0; --i)
      idx = idx * static_cast<std::uint64_t>(p_) + x.c_[static_cast<std::size_t>(i)];
    return idx;
  }

  // "p^k" (always with the exponent, so GF(7) prints "7^1").
  std::string to_string() const {
    return std::to_string(p_) + "^" + std::to_string(k_);
  }
  // Accepts "p^k" or bare "p" (k = 1).
  static const Field* parse(const std::string& s);

  // Element from its string form: prime fields use a decimal residue,
  // extensions a comma-separated coefficient list, constant term first.
  // Short lists are zero-padded, so "2" also parses in GF(p^k) when 2 < p.
  FieldElement parse_element(const std::string& s) const;

 private:
  Field(long p, int k);
  FieldElement make(std::array<std::uint16_t, kMaxDegree> c) const {
    FieldElement e;
    e.f_ = this;
    e.c_ = c;
    return e;
  }

  friend class FieldElement;
  friend FieldElement embed(const FieldElement&, const Field*);

  long p_;
  int k_;
  std::uint64_t order_;  // 0 when p^k does not fit in 64 bits
  std::vector<std::uint16_t> mod_;
};

namespace detail {

inline std::uint64_t checked_pow(long p, int k) {
  unsigned __int128 v = 1;
  for (int i = 0; i < k; ++i) {
    v *= static_cast<unsigned __int128>(p);
    if (v > ~std::uint64_t{0}) return 0;
  }
  return static_cast<std::uint64_t>(v);
}

// Remainder of a mod b over GF(p), b monic; coefficients constant-first.
inline std::vector<long> poly_mod(std::vector<long> a, const std::vector<long>& b,
                                  long p) {
  int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    long t = a[static_cast<std::size_t>(i)] % p;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - db + j)];
      slot = ((slot - t * b[static_cast<std::size_t>(j)]) % p + p) % p;
    }
  }
  a.resize(static_cast<std::size_t>(db));
  return a;
}

// Trial division: monic f of degree k irreducible over GF(p) iff no monic
// divisor of degree 1..k/2 divides it.
inline bool poly_irreducible(const std::vector<long>& f, long p) {
  int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = checked_pow(p, d);
    for (std::uint64_t n = 0; n < count; ++n) {
      std::vector<long> g(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t t = n;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<long>(t % static_cast<std::uint64_t>(p));
        t /= static_cast<std::uint64_t>(p);
      }
      g[static_cast<std::size_t>(d)] = 1;
      auto r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](long v) { return v == 0; })) return false;
    }
  }
  return true;
}

}  // namespace detail

inline Field::Field(long p, int k) : p_(p), k_(k) {
  order_ = detail::checked_pow(p, k);
  if (k == 1) {
    mod_ = {0, 1};
    return;
  }
  // Search candidates in lexicographic order, constant term most significant,
  // so the first irreducible found is the lex-least one.
  std::uint64_t limit = detail::checked_pow(p, k);
  std::uint64_t feasible = detail::checked_pow(p, (k + 1) / 2);
  if (feasible == 0 || feasible > kMaxScanOrder)
    throw cap_error("modulus search infeasible for GF(" + std::to_string(p) + "^" +
                    std::to_string(k) + ")");
  for (std::uint64_t n = 0; n < limit; ++n) {
    std::vector<long> f(static_cast<std::size_t>(k) + 1, 0);
    std::uint64_t t = n;
    for (int i = k - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = static_cast<long>(t % static_cast<std::uint64_t>(p));
      t /= static_cast<std::uint64_t>(p);
    }
    f[static_cast<std::size_t>(k)] = 1;
    if (detail::poly_irreducible(f, p)) {
      mod_.assign(f.begin(), f.end());
      for (std::size_t i = 0; i < mod_.size(); ++i)
        mod_[i] = static_cast<std::uint16_t>(f[i]);
      return;
    }
  }
  throw std::logic_error("no irreducible modulus found");
}

inline const Field* Field::get(long p, int k) {
  if (!detail::is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (p >= (1L << 15)) throw cap_error("characteristic too large");
  if (k < 1 || k > kMaxDegree)
    throw cap_error("extension degree out of range [1, " + std::to_string(kMaxDegree) + "]");
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, k))).first;
  return it->second.get();
}

inline const Field* Field::parse(const std::string& s) {
  auto parse_long = [&](const std::string& part) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad field spec: " + s);
    }
    if (used != part.size()) throw std::invalid_argument("bad field spec: " + s);
    return v;
  };
  auto caret = s.find('^');
  if (caret == std::string::npos) return get(parse_long(s), 1);
  return get(parse_long(s.substr(0, caret)),
             static_cast<int>(parse_long(s.substr(caret + 1))));
}

inline FieldElement Field::parse_element(const std::string& s) const {
  std::vector<std::uint16_t> c;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? comma : comma - start);
    if (part.empty()) throw std::invalid_argument("bad element: " + s);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad element '" + s + "' for field " + to_string());
    }
    if (used != part.size() || v < 0 || v >= p_)
      throw std::invalid_argument("bad element '" + s + "' for field " + to_string());
    c.push_back(static_cast<std::uint16_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return from_coeffs(c);
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.f_ != b.f_ || a.f_ == nullptr) throw std::invalid_argument("mixed-field add");
  const long p = a.f_->p();
  FieldElement r;
  r.f_ = a.f_;
  for (int i = 0; i < a.f_->k(); ++i) {
    auto idx = static_cast<std::size_t>(i);
    r.c_[idx] = static_cast<std::uint16_t>((a.c_[idx] + b.c_[idx]) % p);
  }
  return r;
}

inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (a.f_ != b.f_ || a.f_ == nullptr) throw std::invalid_argument("mixed-field sub");
  const long p = a.f_->p();
  FieldElement r;
  r.f_ = a.f_;
  for (int i = 0; i < a.f_->k(); ++i) {
    auto idx = static_cast<std::size_t>(i);
    r.c_[idx] = static_cast<std::uint16_t>((a.c_[idx] - b.c_[idx] + p) % p);
  }
  return r;
}

inline FieldElement FieldElement::operator-() const {
  if (f_ == nullptr) throw std::invalid_argument("negating null element");
  return f_->zero() - *this;
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.f_ != b.f_ || a.f_ == nullptr) throw std::invalid_argument("mixed-field mul");
  const long p = a.f_->p();
  const int k = a.f_->k();
  std::array<long, 2 * kMaxDegree> acc{};
  for (int i = 0; i < k; ++i) {
    if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
    long ai = a.c_[static_cast<std::size_t>(i)];
    for (int j = 0; j < k; ++j)
      acc[static_cast<std::size_t>(i + j)] += ai * b.c_[static_cast<std::size_t>(j)];
  }
  const auto& m = a.f_->modulus();
  for (int i = 2 * k - 2; i >= k; --i) {
    long t = acc[static_cast<std::size_t>(i)] % p;
    if (t == 0) continue;
    for (int j = 0; j < k; ++j) {
      auto& slot = acc[static_cast<std::size_t>(i - k + j)];
      slot = slot - t * m[static_cast<std::size_t>(j)];
    }
  }
  FieldElement r;
  r.f_ = a.f_;
  for (int i = 0; i < k; ++i) {
    long v = acc[static_cast<std::size_t>(i)] % p;
    r.c_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((v + p) % p);
  }
  return r;
}

inline FieldElement FieldElement::inv() const {
  if (f_ == nullptr) throw std::invalid_argument("inverting null element");
  if (is_zero()) throw std::invalid_argument("division by zero");
  const long p = f_->p();
  const int k = f_->k();
  if (k == 1) return f_->from_int(detail::mod_inv_prime(c_[0], p));
  // Extended Euclid over GF(p)[x] on (element, modulus).
  std::vector<long> r0(f_->modulus().begin(), f_->modulus().end());
  std::vector<long> r1(c_.begin(), c_.begin() + k);
  auto deg = [](const std::vector<long>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
      if (v[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
  };
  std::vector<long> t0{0}, t1{1};
  while (deg(r1) > 0) {
    // Divide r0 by r1; quotient accumulated into the Bezout pair.
    std::vector<long> q(static_cast<std::size_t>(std::max(0, deg(r0) - deg(r1))) + 1, 0);
    std::vector<long> rem = r0;
    long lead_inv = detail::mod_inv_prime(r1[static_cast<std::size_t>(deg(r1))], p);
    for (int i = deg(rem); i >= deg(r1); --i) {
      long coef = rem[static_cast<std::size_t>(i)] % p;
      if (coef == 0) continue;
      long qc = (coef * lead_inv) % p;
      q[static_cast<std::size_t>(i - deg(r1))] = qc;
      for (int j = 0; j <= deg(r1); ++j) {
        auto& slot = rem[static_cast<std::size_t>(i - deg(r1) + j)];
        slot = ((slot - qc * r1[static_cast<std::size_t>(j)]) % p + p) % p;
      }
    }
    // (t0, t1) <- (t1, t0 - q * t1)
    std::vector<long> t2(std::max(t0.size(), q.size() + t1.size()), 0);
    for (std::size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < t1.size(); ++j)
        t2[i + j] = ((t2[i + j] - q[i] * t1[j]) % p + p) % p;
    r0 = r1;
    r1 = rem;
    r1.resize(r0.size(), 0);
    t0 = t1;
    t1 = t2;
  }
  if (deg(r1) != 0) throw std::invalid_argument("element not invertible");
  long scale = detail::mod_inv_prime(r1[0], p);
  FieldElement out;
  out.f_ = f_;
  for (int i = 0; i < k && i < static_cast<int>(t1.size()); ++i)
    out.c_[static_cast<std::size_t>(i)] =
        static_cast<std::uint16_t>(((t1[static_cast<std::size_t>(i)] % p) * scale) % p);
  // t1 may exceed degree k-1; reduce by the modulus if so.
  if (static_cast<int>(t1.size()) > k) {
    std::vector<long> full(t1.begin(), t1.end());
    for (auto& v : full) v = (v * scale) % p;
    std::vector<long> m(f_->modulus().begin(), f_->modulus().end());
    auto red = detail::poly_mod(full, m, p);
    for (int i = 0; i < k; ++i)
      out.c_[static_cast<std::size_t>(i)] =
          static_cast<std::uint16_t>(((red[static_cast<std::size_t>(i)] % p) + p) % p);
  }
  return out;
}

inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * b.inv();
}

inline std::string FieldElement::to_string() const {
  if (f_ == nullptr) return "<null>";
  if (f_->k() == 1) return std::to_string(c_[0]);
  std::string s;
  for (int i = 0; i < f_->k(); ++i) {
    if (i) s += ',';
    s += std::to_string(c_[static_cast<std::size_t>(i)]);
  }
  return s;
}

// --- Embeddings -------------------------------------------------------------

namespace detail {

// Cache of generator images for subfield embeddings, keyed by (p, k_src, k_dst).
inline std::map<std::tuple<long, int, int>, FieldElement>& embed_cache() {
  static std::map<std::tuple<long, int, int>, FieldElement> cache;
  return cache;
}
inline std::mutex& embed_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace detail

// Ring embedding GF(p^k) -> GF(p^m), k | m.  The source generator maps to the
// minimal root (in the target's element order) of the source modulus; constants
// map to constants, so towers over the same source agree on the base field.
inline FieldElement embed(const FieldElement& x, const Field* target) {
  const Field* src = x.field();
  if (src == nullptr || target == nullptr) throw std::invalid_argument("embed: null field");
  if (src->p() != target->p())
    throw std::invalid_argument("embed requires equal characteristic");
  if (target->k() % src->k() != 0)
    throw std::invalid_argument("embed requires source degree dividing target degree");
  if (src == target) return x;
  if (src->k() == 1) return target->from_int(x.coeff(0));

  FieldElement g_img;
  {
    std::lock_guard<std::mutex> lock(detail::embed_mutex());
    auto key = std::make_tuple(src->p(), src->k(), target->k());
    auto it = detail::embed_cache().find(key);
    if (it != detail::embed_cache().end()) {
      g_img = it->second;
    } else {
      if (!target->order_fits() || target->order() > kMaxScanOrder)
        throw cap_error("target field too large for embedding scan");
      // Minimal root of the source modulus among target elements.
      std::optional<FieldElement> best;
      const auto& m = src->modulus();
      for (std::uint64_t n = 0; n < target->order(); ++n) {
        FieldElement t = target->element_at(n);
        FieldElement acc = target->from_int(m[static_cast<std::size_t>(src->k())]);
        for (int i = src->k() - 1; i >= 0; --i)
          acc = acc * t + target->from_int(m[static_cast<std::size_t>(i)]);
        if (acc.is_zero() && (!best || t < *best)) best = t;
      }
      if (!best) throw std::logic_error("no modulus root in extension");
      g_img = *best;
      detail::embed_cache().emplace(key, g_img);
    }
  }
  FieldElement acc = target->zero();
  for (int i = src->k() - 1; i >= 0; --i)
    acc = acc * g_img + target->from_int(x.coeff(i));
  return acc;
}

// --- Root finding -----------------------------------------------------------

// All roots in the owner field of c0 + c1 t + c2 t^2 + c3 t^3, found by
// exhaustive evaluation, sorted ascending in the element order.
inline std::vector<FieldElement> poly_roots(const FieldElement& c0, const FieldElement& c1,
                                            const FieldElement& c2, const FieldElement& c3) {
  const Field* f = c0.field();
  if (f == nullptr || c1.field() != f || c2.field() != f || c3.field() != f)
    throw std::invalid_argument("poly_roots: mixed fields");
  if (c0.is_zero() && c1.is_zero() && c2.is_zero() && c3.is_zero())
    throw std::invalid_argument("poly_roots: zero polynomial");
  if (!f->order_fits() || f->order() > kMaxScanOrder)
    throw cap_error("field too large for exhaustive root scan");
  std::vector<FieldElement> roots;
  for (std::uint64_t n = 0; n < f->order(); ++n) {
    FieldElement t = f->element_at(n);
    FieldElement v = ((c3 * t + c2) * t + c1) * t + c0;
    if (v.is_zero()) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Minimal square root of x in the element order, if x is a square.
inline std::optional<FieldElement> sqrt_min(const FieldElement& x) {
  const Field* f = x.field();
  if (f == nullptr) throw std::invalid_argument("sqrt_min: null element");
  if (!f->order_fits() || f->order() > kMaxScanOrder)
    throw cap_error("field too large for exhaustive root scan");
  std::optional<FieldElement> best;
  for (std::uint64_t n = 0; n < f->order(); ++n) {
    FieldElement t = f->element_at(n);
    if (t * t == x && (!best || t < *best)) best = t;
  }
  return best;
}

struct SplitResult {
  const Field* field;
  FieldElement root;
};

// Smallest extension GF(p^(k*d)), d in {1,2,3}, containing a root of the
// given polynomial (degree 1..3), together with the minimal such root.
inline SplitResult splitting_extension(const FieldElement& c0, const FieldElement& c1,
                                       const FieldElement& c2, const FieldElement& c3,
                                       const Field* f) {
  if (c0.field() != f || c1.field() != f || c2.field() != f || c3.field() != f)
    throw std::invalid_argument("splitting_extension: mixed fields");
  int degree = !c3.is_zero() ? 3 : (!c2.is_zero() ? 2 : (!c1.is_zero() ? 1 : 0));
  if (degree == 0) throw std::invalid_argument("splitting_extension: degree must be 1..3");
  for (int d = 1; d <= degree; ++d) {
    int kt = f->k() * d;
    if (kt > kMaxDegree)
      throw cap_error("extension cap exceeded: would need GF(" + std::to_string(f->p()) +
                      "^" + std::to_string(kt) + ")");
    const Field* g = Field::get(f->p(), kt);
    auto roots = poly_roots(embed(c0, g), embed(c1, g), embed(c2, g), embed(c3, g));
    if (!roots.empty()) return {g, roots.front()};
  }
  throw std::logic_error("no root within the degree bound");
}

}  // namespace alg2d

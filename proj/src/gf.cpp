#include "evstab/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace evstab {
namespace {

// Dense polynomial arithmetic over GF(p) on plain int64 vectors (low-to-high,
// no trailing zeros). Only used for context construction and embeddings; the
// generic template layer handles everything user-facing.
using FpVec = std::vector<long long>;

void fp_trim(FpVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpVec fp_mul(const FpVec& a, const FpVec& b, long long p) {
  if (a.empty() || b.empty()) return {};
  FpVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  fp_trim(r);
  return r;
}

// Remainder of a by monic b.
FpVec fp_rem(FpVec a, const FpVec& b, long long p) {
  internal_check(!b.empty() && b.back() == 1, "fp_rem: divisor not monic");
  while (a.size() >= b.size()) {
    long long c = a.back();
    if (c != 0) {
      size_t off = a.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j)
        a[off + j] = ((a[off + j] - c * b[j]) % p + p) % p;
    }
    a.pop_back();
    fp_trim(a);
    if (a.size() < b.size()) break;
  }
  return a;
}

long long fp_inv_scalar(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long qq = r / nr;
    t -= qq * nt; std::swap(t, nt);
    r -= qq * nr; std::swap(r, nr);
  }
  internal_check(r == 1, "fp_inv_scalar: not invertible");
  return ((t % p) + p) % p;
}

FpVec fp_monic(FpVec a, long long p) {
  fp_trim(a);
  if (a.empty()) return a;
  long long s = fp_inv_scalar(a.back(), p);
  for (auto& c : a) c = (c * s) % p;
  return a;
}

FpVec fp_gcd(FpVec a, FpVec b, long long p) {
  fp_trim(a); fp_trim(b);
  while (!b.empty()) {
    FpVec r = fp_rem(fp_monic(a, p), fp_monic(b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

// x^(p^e) mod f by repeated p-th powering.
FpVec fp_xq_pow(const FpVec& f, long long p, int e) {
  FpVec h = {0, 1};
  h = fp_rem(std::move(h), f, p);
  for (int i = 0; i < e; ++i) {
    // h^p mod f, square-and-multiply over the bits of p
    FpVec acc = {1};
    FpVec base = h;
    long long exp = p;
    while (exp > 0) {
      if (exp & 1) acc = fp_rem(fp_mul(acc, base, p), f, p);
      base = fp_rem(fp_mul(base, base, p), f, p);
      exp >>= 1;
    }
    h = std::move(acc);
  }
  return h;
}

bool fp_is_irreducible(const FpVec& f, long long p) {
  int d = (int)f.size() - 1;
  if (d < 1) return false;
  for (int e = 1; 2 * e <= d; ++e) {
    FpVec h = fp_xq_pow(f, p, e);
    // gcd(h - x, f)
    FpVec hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = ((hx[1] - 1) % p + p) % p;
    fp_trim(hx);
    FpVec g = fp_gcd(hx, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_prime_i64(long long n) {
  if (n < 2) return false;
  mpz_class z((long)n);
  // n < 2^31, so the probabilistic test is exact in this range.
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::mutex g_registry_mutex;
std::map<std::pair<long long, int>, std::unique_ptr<GFContext>>& registry() {
  static std::map<std::pair<long long, int>, std::unique_ptr<GFContext>> r;
  return r;
}

std::mutex g_embed_mutex;
std::map<std::pair<const GFContext*, const GFContext*>, GFElem>& embed_cache() {
  static std::map<std::pair<const GFContext*, const GFContext*>, GFElem> c;
  return c;
}

} // namespace

const GFContext* gf_construct(long long p, int m) {
  if (p < 2 || p >= (1LL << 31)) throw ArgumentError("characteristic out of range (need 2 <= p < 2^31)");
  if (!is_prime_i64(p)) throw ArgumentError("GF characteristic " + std::to_string(p) + " is not prime");
  if (m < 1 || m > 48) throw ArgumentError("extension degree out of range");
  // q = p^m must fit in int64
  long long q = 1;
  for (int i = 0; i < m; ++i) {
    if (q > (1LL << 62) / p) throw ResourceError("field size p^m exceeds 2^62");
    q *= p;
  }

  std::lock_guard<std::mutex> lock(g_registry_mutex);
  auto key = std::make_pair(p, m);
  auto it = registry().find(key);
  if (it != registry().end()) return it->second.get();

  auto ctx = std::make_unique<GFContext>();
  ctx->p = p;
  ctx->m = m;
  ctx->q = q;
  if (m == 1) {
    ctx->modulus = {0, 1}; // z
  } else {
    // Enumerate monic candidates z^m + c_{m-1} z^{m-1} + ... + c_0 in
    // lexicographic order of (c_{m-1}, ..., c_0); take the first irreducible.
    std::vector<long long> c(m, 0); // c[0] = c_{m-1} ... c[m-1] = c_0
    bool found = false;
    while (true) {
      FpVec f(m + 1, 0);
      f[m] = 1;
      for (int i = 0; i < m; ++i) f[m - 1 - i] = c[i];
      if (fp_is_irreducible(f, p)) {
        ctx->modulus.assign(f.begin(), f.end());
        found = true;
        break;
      }
      int i = m - 1;
      while (i >= 0 && c[i] == p - 1) c[i--] = 0;
      if (i < 0) break;
      ++c[i];
    }
    internal_check(found, "gf_construct: no irreducible modulus found");
  }
  const GFContext* out = ctx.get();
  registry()[key] = std::move(ctx);
  return out;
}

std::string GFContext::describe() const {
  std::ostringstream os;
  if (m == 1) {
    os << "GF(" << p << ")";
  } else {
    os << "GF(" << q << ") = GF(" << p << "^" << m << "), modulus ";
    bool first = true;
    for (int i = m; i >= 0; --i) {
      if (modulus[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0) { os << modulus[i]; continue; }
      if (modulus[i] != 1) os << modulus[i] << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

GFElem::GFElem(const GFContext* ctx, long long c) : ctx_(ctx) {
  internal_check(ctx != nullptr, "GFElem: null context");
  c_.assign(ctx->m, 0);
  long long r = c % ctx->p;
  if (r < 0) r += ctx->p;
  c_[0] = r;
}

GFElem::GFElem(const GFContext* ctx, Coeffs c) : ctx_(ctx), c_(std::move(c)) {
  internal_check(ctx != nullptr, "GFElem: null context");
  internal_check((int)c_.size() == ctx->m, "GFElem: coefficient count != m");
  reduce_mod_p();
}

void GFElem::reduce_mod_p() {
  for (auto& x : c_) {
    x %= ctx_->p;
    if (x < 0) x += ctx_->p;
  }
}

bool GFElem::is_zero() const {
  for (auto x : c_)
    if (x != 0) return false;
  return true;
}

bool GFElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool GFElem::in_prime_subfield() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

GFElem GFElem::operator+(const GFElem& o) const {
  internal_check(ctx_ == o.ctx_, "GFElem: mixed fields");
  GFElem r = *this;
  for (int i = 0; i < ctx_->m; ++i) {
    r.c_[i] += o.c_[i];
    if (r.c_[i] >= ctx_->p) r.c_[i] -= ctx_->p;
  }
  return r;
}

GFElem GFElem::operator-(const GFElem& o) const {
  internal_check(ctx_ == o.ctx_, "GFElem: mixed fields");
  GFElem r = *this;
  for (int i = 0; i < ctx_->m; ++i) {
    r.c_[i] -= o.c_[i];
    if (r.c_[i] < 0) r.c_[i] += ctx_->p;
  }
  return r;
}

GFElem GFElem::operator-() const {
  GFElem r = *this;
  for (int i = 0; i < ctx_->m; ++i)
    if (r.c_[i] != 0) r.c_[i] = ctx_->p - r.c_[i];
  return r;
}

GFElem GFElem::operator*(const GFElem& o) const {
  internal_check(ctx_ == o.ctx_, "GFElem: mixed fields");
  const long long p = ctx_->p;
  const int m = ctx_->m;
  if (m == 1) {
    GFElem r(ctx_, Coeffs{(c_[0] * o.c_[0]) % p});
    return r;
  }
  boost::container::small_vector<long long, 4> t(2 * m - 1, 0);
  for (int i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < m; ++j)
      t[i + j] = (t[i + j] + c_[i] * o.c_[j]) % p;
  }
  // reduce by the monic modulus
  for (int k = 2 * m - 2; k >= m; --k) {
    long long c = t[k];
    if (c == 0) continue;
    t[k] = 0;
    for (int j = 0; j < m; ++j)
      t[k - m + j] = ((t[k - m + j] - c * ctx_->modulus[j]) % p + p) % p;
  }
  Coeffs rc(t.begin(), t.begin() + m);
  return GFElem(ctx_, std::move(rc));
}

GFElem GFElem::inv() const {
  if (is_zero()) throw ArgumentError("inverse of zero field element");
  const long long p = ctx_->p;
  if (ctx_->m == 1) return GFElem(ctx_, fp_inv_scalar(c_[0], p));
  // extended Euclid on (this, modulus) over GF(p)
  FpVec r0(ctx_->modulus.begin(), ctx_->modulus.end());
  FpVec r1(c_.begin(), c_.end());
  fp_trim(r1);
  FpVec s0 = {}, s1 = {1}; // coefficients tracking r1 (i.e. this element)
  while (!r1.empty()) {
    // divide r0 by r1
    FpVec q;
    FpVec rem = r0;
    long long lcinv = fp_inv_scalar(r1.back(), p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      long long c = (rem.back() * lcinv) % p;
      size_t off = rem.size() - r1.size();
      q[off] = c;
      for (size_t j = 0; j < r1.size(); ++j)
        rem[off + j] = ((rem[off + j] - c * r1[j]) % p + p) % p;
      fp_trim(rem);
      if (rem.size() < r1.size()) break;
    }
    FpVec s2 = s0; // s2 = s0 - q*s1
    {
      FpVec qs = fp_mul(q, s1, p);
      if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
      for (size_t i = 0; i < qs.size(); ++i)
        s2[i] = ((s2[i] - qs[i]) % p + p) % p;
      fp_trim(s2);
    }
    r0 = std::move(r1); r1 = std::move(rem);
    s0 = std::move(s1); s1 = std::move(s2);
  }
  internal_check(r0.size() == 1, "GFElem::inv: gcd not constant");
  long long u = fp_inv_scalar(r0[0], p);
  Coeffs out(ctx_->m, 0);
  for (size_t i = 0; i < s0.size(); ++i) out[i] = (s0[i] * u) % p;
  return GFElem(ctx_, std::move(out));
}

GFElem GFElem::operator/(const GFElem& o) const { return *this * o.inv(); }

GFElem GFElem::pow(const mpz_class& e) const {
  if (e < 0) return inv().pow(-e);
  GFElem acc(ctx_, 1);
  GFElem base = *this;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

GFElem GFElem::frobenius() const { return pow(mpz_class((long)ctx_->p)); }

GFElem GFElem::pth_root() const {
  // Frobenius is bijective; x^(1/p) = x^(p^(m-1))
  mpz_class e = 1;
  for (int i = 0; i < ctx_->m - 1; ++i) e *= (long)ctx_->p;
  return pow(e);
}

bool operator==(const GFElem& a, const GFElem& b) {
  internal_check(a.ctx_ == b.ctx_, "GFElem: mixed fields in comparison");
  return a.c_ == b.c_;
}

std::strong_ordering operator<=>(const GFElem& a, const GFElem& b) {
  internal_check(a.ctx_ == b.ctx_, "GFElem: mixed fields in comparison");
  for (int i = a.ctx_->m - 1; i >= 0; --i)
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  return std::strong_ordering::equal;
}

std::string GFElem::to_string() const {
  if (in_prime_subfield()) return std::to_string(constant_coeff());
  std::ostringstream os;
  bool first = true;
  for (int i = ctx_->m - 1; i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) { os << c_[i]; continue; }
    if (c_[i] != 1) os << c_[i] << "*";
    os << "g";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

GFElem gf_element_at(const GFContext* ctx, long long index) {
  internal_check(index >= 0 && index < ctx->q, "gf_element_at: index out of range");
  GFElem::Coeffs c(ctx->m, 0);
  for (int i = 0; i < ctx->m && index > 0; ++i) {
    c[i] = index % ctx->p;
    index /= ctx->p;
  }
  return GFElem(ctx, std::move(c));
}

long long gf_element_index(const GFElem& x) {
  long long idx = 0;
  for (int i = x.ctx()->m - 1; i >= 0; --i) idx = idx * x.ctx()->p + x.coeffs()[i];
  return idx;
}

GFElem gf_first_root(const GFContext* ctx, const std::vector<long long>& poly) {
  if (ctx->q > (1LL << 22))
    throw ResourceError("field too large for exhaustive root search");
  for (long long i = 0; i < ctx->q; ++i) {
    GFElem x = gf_element_at(ctx, i);
    GFElem acc(ctx, 0);
    for (int j = (int)poly.size() - 1; j >= 0; --j)
      acc = acc * x + GFElem(ctx, poly[j]);
    if (acc.is_zero()) return x;
  }
  throw InternalError("gf_first_root: no root in the target field");
}

GFElem gf_embed(const GFElem& x, const GFContext* super) {
  const GFContext* sub = x.ctx();
  if (sub == super) return x;
  internal_check(sub->p == super->p && super->m % sub->m == 0,
                 "gf_embed: not a subfield");
  if (sub->m == 1) return GFElem(super, x.constant_coeff());
  GFElem gen_image(super, 0);
  {
    std::lock_guard<std::mutex> lock(g_embed_mutex);
    auto key = std::make_pair(sub, super);
    auto it = embed_cache().find(key);
    if (it != embed_cache().end()) {
      gen_image = it->second;
    } else {
      gen_image = gf_first_root(super, sub->modulus);
      embed_cache().emplace(key, gen_image);
    }
  }
  GFElem acc(super, 0);
  for (int i = sub->m - 1; i >= 0; --i)
    acc = acc * gen_image + GFElem(super, x.coeffs()[i]);
  return acc;
}

} // namespace evstab

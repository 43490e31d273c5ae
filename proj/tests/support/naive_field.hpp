// Reference arithmetic for tests. Written independently of the library: plain
// schoolbook products, reduction by repeated substitution, inverses by
// Fermat, Gaussian elimination on dense matrices. Only the flat coordinate
// layout is shared, so results can be compared word for word.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace naive {

using Vec = std::vector<std::uint32_t>;

inline std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) { return static_cast<std::uint32_t>(a * b % p); }

inline std::size_t rank(std::vector<Vec> m, std::uint32_t p) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    std::uint32_t inv = 1;
    for (std::uint32_t t = 1; t < p; ++t)
      if (mulmod(t, m[r][c], p) == 1) inv = t;
    for (auto& x : m[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint32_t f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = (m[i][k] + p - mulmod(f, m[r][k], p)) % p;
    }
    ++r;
  }
  return r;
}

/// Interface shared by the reference fields below.
class Field {
 public:
  virtual ~Field() = default;
  virtual std::uint32_t p() const = 0;
  virtual std::size_t degree() const = 0;
  virtual Vec mul(const Vec& a, const Vec& b) const = 0;

  Vec zero() const { return Vec(degree(), 0); }
  Vec one() const {
    Vec v = zero();
    v[0] = 1;
    return v;
  }
  Vec constant(std::int64_t c) const {
    Vec v = zero();
    v[0] = static_cast<std::uint32_t>(((c % p()) + p()) % p());
    return v;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p();
    return r;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + p() - b[i]) % p();
    return r;
  }
  Vec scale(const Vec& a, std::uint32_t s) const {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p());
    return r;
  }
  Vec pow(Vec a, std::uint64_t e) const {
    Vec r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Vec frob(const Vec& a, std::size_t k = 1) const {
    Vec r = a;
    for (std::size_t i = 0; i < k; ++i) r = pow(r, p());
    return r;
  }
  /// a^(p^N - 2) = a^(p-2) * prod_{i=1}^{N-1} (a^(p^i))^(p-1).
  Vec inv(const Vec& a) const {
    Vec r = pow(a, p() - 2);
    Vec c = a;
    for (std::size_t i = 1; i < degree(); ++i) {
      c = pow(c, p());
      r = mul(r, pow(c, p() - 1));
    }
    return r;
  }
  /// Rank over Z_p of the conjugates a^(p^(i*step)) multiplied by the unit
  /// vectors of the subfield occupying the first `step` coordinates.
  std::size_t relative_rank(const Vec& a, std::size_t step) const {
    std::vector<Vec> rows;
    Vec c = a;
    for (std::size_t i = 0; i < degree() / step; ++i) {
      for (std::size_t j = 0; j < step; ++j) {
        Vec e = zero();
        e[j] = 1;
        rows.push_back(mul(e, c));
      }
      c = frob(c, step);
    }
    return rank(rows, p());
  }
  bool normal_over_prime(const Vec& a) const {
    std::vector<Vec> rows;
    Vec c = a;
    for (std::size_t i = 0; i < degree(); ++i) {
      rows.push_back(c);
      c = frob(c);
    }
    return rank(rows, p()) == degree();
  }
};

/// Artin-Schreier tower: level k is level k-1 [x]/(x^p - x - alpha_k).
class Tower : public Field {
 public:
  Tower(std::uint32_t p, std::vector<Vec> alphas) : p_(p), alphas_(std::move(alphas)) {}
  /// Derives every alpha itself: alpha_1 = 1, alpha_(k+1) = (x^-1 - b)^-1 at level k.
  static Tower derive(std::uint32_t p, std::size_t levels, std::uint32_t b = 1) {
    Tower t(p, {Vec{1}});
    while (t.alphas_.size() < levels) {
      Vec dinv = t.sub(t.inv(t.generator()), t.constant(b));
      t.alphas_.push_back(t.inv(dinv));
    }
    return t;
  }
  Tower truncated(std::size_t levels) const {
    return Tower(p_, std::vector<Vec>(alphas_.begin(), alphas_.begin() + static_cast<std::ptrdiff_t>(levels)));
  }

  std::uint32_t p() const override { return p_; }
  std::size_t degree() const override { return size(alphas_.size()); }
  std::size_t levels() const { return alphas_.size(); }
  const Vec& alpha(std::size_t level) const { return alphas_.at(level - 1); }
  Vec mul(const Vec& a, const Vec& b) const override { return mul_at(alphas_.size(), a, b); }
  Vec generator() const {
    Vec g = zero();
    g[size(alphas_.size() - 1)] = 1;
    return g;
  }

 private:
  std::size_t size(std::size_t level) const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < level; ++i) s *= p_;
    return s;
  }
  Vec mul_at(std::size_t level, const Vec& a, const Vec& b) const {
    if (level == 0) return {mulmod(a[0], b[0], p_)};
    const std::size_t w = size(level - 1);
    auto block = [&](const Vec& v, std::size_t i) { return Vec(v.begin() + i * w, v.begin() + (i + 1) * w); };
    std::vector<Vec> prod(2 * p_ - 1, Vec(w, 0));
    for (std::size_t i = 0; i < p_; ++i)
      for (std::size_t j = 0; j < p_; ++j) {
        Vec t = mul_at(level - 1, block(a, i), block(b, j));
        for (std::size_t k = 0; k < w; ++k) prod[i + j][k] = (prod[i + j][k] + t[k]) % p_;
      }
    // x^p = x + alpha
    for (std::size_t j = 2 * p_ - 2; j >= p_; --j) {
      Vec c = prod[j];
      Vec ca = mul_at(level - 1, c, alphas_[level - 1]);
      for (std::size_t k = 0; k < w; ++k) {
        prod[j - p_ + 1][k] = (prod[j - p_ + 1][k] + c[k]) % p_;
        prod[j - p_][k] = (prod[j - p_][k] + ca[k]) % p_;
      }
    }
    Vec out;
    for (std::size_t i = 0; i < p_; ++i) out.insert(out.end(), prod[i].begin(), prod[i].end());
    return out;
  }

  std::uint32_t p_;
  std::vector<Vec> alphas_;
};

/// Z_p[x]/(x^d - xi).
class Binomial : public Field {
 public:
  Binomial(std::uint32_t p, std::size_t d, std::uint32_t xi) : p_(p), d_(d), xi_(xi) {}
  std::uint32_t p() const override { return p_; }
  std::size_t degree() const override { return d_; }
  Vec mul(const Vec& a, const Vec& b) const override {
    Vec out(d_, 0);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        std::uint32_t t = mulmod(a[i], b[j], p_);
        if (i + j >= d_) t = mulmod(t, xi_, p_);
        out[(i + j) % d_] = (out[(i + j) % d_] + t) % p_;
      }
    return out;
  }
  Vec x() const {
    Vec v = zero();
    v[1 % d_] = 1;
    return v;
  }

 private:
  std::uint32_t p_;
  std::size_t d_;
  std::uint32_t xi_;
};

}  // namespace naive

#pragma once

// Gleason polynomials Gamma_N(b) = F^N_{0,b}(0) of the unicritical family
// z^d + b, simplicity of their zeros, the Delta^omega factorization of
// Gamma_N - Gamma_n over Q(zeta_d), and an on-disk cache.

#include "critlab/cyclotomic.hpp"
#include "critlab/numeric.hpp"
#include "critlab/poly.hpp"
#include "critlab/poly_io.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <unistd.h>

namespace critlab::gleason {

namespace fs = std::filesystem;

inline void check_degree(int d) {
  if (d < 2) throw std::invalid_argument("degree must be >= 2");
}

/// Gamma_0 = 0, Gamma_N = Gamma_{N-1}^d + b.
inline QPoly gamma_step(const QPoly& prev, int d) {
  return pow(prev, static_cast<unsigned long>(d)) + QPoly::x();
}

inline QPoly gamma(int d, int N) {
  check_degree(d);
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  static std::mutex mu;
  static std::map<std::pair<int, int>, QPoly> memo;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = memo.find({d, N}); it != memo.end()) return it->second;
  int start = 0;
  QPoly g;
  for (int k = N - 1; k >= 1; --k)
    if (auto it = memo.find({d, k}); it != memo.end()) {
      start = k;
      g = it->second;
      break;
    }
  for (int k = start + 1; k <= N; ++k) {
    g = gamma_step(g, d);
    memo.emplace(std::make_pair(d, k), g);
  }
  return g;
}

/// P - 1 = 0 mod p coefficientwise (P with p-integral coefficients).
inline bool congruent_to_one(const QPoly& p, const Prime& prime) {
  QPoly diff = p - QPoly::constant(Rational(1));
  for (const auto& c : diff.coefficients())
    if (val_p(c, prime) < ValOrInf(1)) return false;
  return true;
}

struct GleasonReport {
  int d = 0, N = 0;
  long degree = 0;
  std::map<std::uint64_t, bool> derivative_congruent_1;  // prime p | d -> Gamma_N' = 1 mod p
  bool gcd_trivial = false;                                // gcd(Gamma_N, Gamma_N') = 1 over Q

  bool passed() const {
    if (!gcd_trivial) return false;
    for (const auto& [p, ok] : derivative_congruent_1)
      if (!ok) return false;
    return true;
  }
};

inline GleasonReport check_gleason_poly(int d, int N, const QPoly& g) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  GleasonReport r;
  r.d = d;
  r.N = N;
  r.degree = g.degree();
  const QPoly dg = g.derivative();
  for (std::uint64_t p : prime_divisors(static_cast<std::uint64_t>(d))) r.derivative_congruent_1[p] = congruent_to_one(dg, Prime(p));
  r.gcd_trivial = gcd_monic(g, dg).degree() == 0;
  return r;
}

inline GleasonReport check_gleason(int d, int N) { return check_gleason_poly(d, N, gamma(d, N)); }

/// Delta^omega_{N,n} = Gamma_{N-1} - omega * Gamma_{n-1}, omega = zeta_d^k.
inline UniPoly<CycloElem> delta(int d, int N, int n, std::uint64_t k) {
  check_degree(d);
  if (!(N > n && n >= 1)) throw std::invalid_argument("need N > n >= 1");
  if (k >= static_cast<std::uint64_t>(d)) throw std::invalid_argument("need 0 <= k < d");
  FieldPtr field = cyclotomic_field(static_cast<std::uint64_t>(d));
  UniPoly<CycloElem> prev = lift_to_field(gamma(d, n - 1), field);
  return lift_to_field(gamma(d, N - 1), field) - prev.scaled(zeta_power(field, k));
}

struct MisiurewiczReport {
  int d = 0, N = 0, n = 0;
  QPoly multiple_zero_locus;   // squarefree part of gcd(P, P'), P = Gamma_N - Gamma_n
  bool divides_previous = false;  // locus | Gamma_{N-1} - Gamma_{n-1}
  std::map<std::uint64_t, bool> omega_simplicity;  // k (omega = zeta_d^k, k != 0) -> Delta^omega squarefree

  bool passed() const {
    if (!divides_previous) return false;
    for (const auto& [k, ok] : omega_simplicity)
      if (!ok) return false;
    return true;
  }
};

inline MisiurewiczReport check_misiurewicz(int d, int N, int n) {
  check_degree(d);
  if (!(N > n && n >= 1)) throw std::invalid_argument("need N > n >= 1");
  MisiurewiczReport r;
  r.d = d;
  r.N = N;
  r.n = n;
  const QPoly P = gamma(d, N) - gamma(d, n);
  const QPoly g = gcd_monic(P, P.derivative());
  r.multiple_zero_locus = g.degree() == 0 ? QPoly::constant(Rational(1)) : squarefree_part(g);
  r.divides_previous = divides(r.multiple_zero_locus, gamma(d, N - 1) - gamma(d, n - 1));
  for (std::uint64_t k = 1; k < static_cast<std::uint64_t>(d); ++k) r.omega_simplicity[k] = is_squarefree(delta(d, N, n, k));
  return r;
}

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory precedence: explicit argument, CRITLAB_CACHE, ~/.cache/critlab.
inline fs::path default_cache_dir() {
  if (const char* env = std::getenv("CRITLAB_CACHE"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "critlab";
  return fs::temp_directory_path() / "critlab-cache";
}

class GammaCache {
 public:
  explicit GammaCache(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& directory() const { return dir_; }

  fs::path path_for(int d, int N) const {
    return dir_ / ("gamma_d" + std::to_string(d) + "_N" + std::to_string(N) + ".poly");
  }

  void store(int d, int N, const QPoly& g) const {
    fs::create_directories(dir_);
    static std::atomic<unsigned> counter{0};
    const fs::path target = path_for(d, N);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
      std::ofstream os(tmp, std::ios::trunc);
      if (!os) throw CacheError("cannot write cache file " + tmp.string());
      write_unipoly(os, g);
      if (!os.flush()) throw CacheError("cannot write cache file " + tmp.string());
    }
    fs::rename(tmp, target);
  }

  /// Validated load; nullopt when absent. Throws CacheError on corrupt entries.
  std::optional<QPoly> load(int d, int N) const {
    const fs::path path = path_for(d, N);
    std::ifstream is(path);
    if (!is) return std::nullopt;
    QPoly g;
    try {
      g = read_unipoly(is);
    } catch (const FormatError& e) {
      throw CacheError(path.string() + ": " + e.what());
    }
    validate(d, N, g, path);
    return g;
  }

  /// Cached value when valid, else computed and stored. Corrupt entries are
  /// replaced.
  QPoly get(int d, int N) const {
    try {
      if (auto g = load(d, N)) return *g;
    } catch (const CacheError&) {
    }
    QPoly g = gamma(d, N);
    store(d, N, g);
    return g;
  }

 private:
  void validate(int d, int N, const QPoly& g, const fs::path& path) const {
    auto fail = [&](const std::string& why) { throw CacheError(path.string() + ": " + why); };
    if (N == 0) {
      if (!g.is_zero()) fail("Gamma_0 must be zero");
      return;
    }
    Integer expected_degree;
    mpz_ui_pow_ui(expected_degree.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(N - 1));
    if (Integer(g.degree()) != expected_degree) fail("wrong degree");
    if (g.leading() != 1) fail("not monic");
    for (const auto& c : g.coefficients())
      if (c.get_den() != 1) fail("non-integer coefficient");
    if (!is_zero(g.coeff(0))) fail("nonzero constant term");
    for (std::uint64_t p : prime_divisors(static_cast<std::uint64_t>(d)))
      if (!congruent_to_one(g.derivative(), Prime(p))) fail("derivative not 1 mod " + std::to_string(p));
    // Spot check against the iteration modulo a 61-bit prime.
    constexpr std::uint64_t q = 2305843009213693951ULL;  // 2^61 - 1
    std::mt19937_64 rng(static_cast<std::uint64_t>(d) * 1000003ULL + static_cast<std::uint64_t>(N));
    for (int trial = 0; trial < 4; ++trial) {
      const std::uint64_t x = rng() % q;
      std::uint64_t z = 0;
      for (int k = 0; k < N; ++k) z = (::critlab::detail::powmod64(z, static_cast<std::uint64_t>(d), q) + x) % q;
      std::uint64_t acc = 0;
      const auto& c = g.coefficients();
      for (std::size_t i = c.size(); i-- > 0;) {
        Integer ci = c[i].get_num();
        const std::uint64_t cm = mpz_fdiv_ui(ci.get_mpz_t(), q);
        acc = (::critlab::detail::mulmod64(acc, x, q) + cm) % q;
      }
      if (acc != z) fail("value mismatch against the recursion");
    }
    // Full recomputation from the previous level when it is cached.
    if (N >= 2) {
      std::ifstream prev_is(path_for(d, N - 1));
      if (prev_is) {
        try {
          QPoly prev = read_unipoly(prev_is);
          if (gamma_step(prev, d) == g) return;
          // The previous file may be the corrupt one; recompute from scratch.
        } catch (const FormatError&) {
        }
        if (gamma(d, N) != g) fail("recomputation mismatch");
      }
    }
  }

  fs::path dir_;
};

}  // namespace critlab::gleason

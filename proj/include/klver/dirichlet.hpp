#pragma once
// Dirichlet characters as value tables with conductor metadata.

#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "klver/arith.hpp"

namespace klver {

struct DirichletCharacter {
  long modulus = 1;
  long conductor = 1;
  bool principal = false;
  std::vector<std::complex<double>> table;  // index n mod modulus

  std::complex<double> operator()(const Int& n) const {
    long r = mpz_class(n % modulus).get_si();
    if (r < 0) r += modulus;
    return table[static_cast<size_t>(r)];
  }
  std::complex<double> operator()(std::int64_t n) const {
    std::int64_t r = n % modulus;
    if (r < 0) r += modulus;
    return table[static_cast<size_t>(r)];
  }

  bool is_real() const {
    for (auto& z : table)
      if (std::abs(z.imag()) > 1e-14) return false;
    return true;
  }

  // omega(-1); needed for the weight parity condition
  std::complex<double> at_minus_one() const { return (*this)(Int(-1)); }

  static DirichletCharacter trivial() {
    DirichletCharacter chi;
    chi.modulus = 1;
    chi.conductor = 1;
    chi.principal = true;
    chi.table = {{1.0, 0.0}};
    return chi;
  }

  // principal character mod M (vanishes exactly on gcd(n,M) > 1)
  static DirichletCharacter principal_mod(long M) {
    DirichletCharacter chi;
    chi.modulus = M;
    chi.conductor = 1;
    chi.principal = true;
    chi.table.resize(static_cast<size_t>(M));
    for (long n = 0; n < M; ++n)
      chi.table[static_cast<size_t>(n)] = (std::gcd(n, M) == 1) ? 1.0 : 0.0;
    return chi;
  }

  // principal character mod prod(q_i): the "trivial chi" of the S-sums
  static DirichletCharacter principal_mod_S(const SSet& S) {
    long M = 1;
    for (long q : S.primes) M *= q;
    return principal_mod(M);
  }

  // real character n -> kronecker(D, n), modulus |D|
  static DirichletCharacter kronecker_char(long D) {
    if (D == 0) throw std::invalid_argument("kronecker_char: D = 0");
    DirichletCharacter chi;
    chi.modulus = std::labs(D);
    chi.conductor = chi.modulus;  // caller's responsibility to pass fundamental D
    chi.principal = (chi.modulus == 1);
    chi.table.resize(static_cast<size_t>(chi.modulus));
    for (long n = 0; n < chi.modulus; ++n)
      chi.table[static_cast<size_t>(n)] =
          static_cast<double>(kronecker_symbol(Int(D), Int(n)));
    // kronecker(D, .) is periodic mod |D| only for D = 0,1 mod 4; reject others
    for (long n = 0; n < chi.modulus; ++n) {
      long m = n + chi.modulus;
      if (std::abs(chi.table[static_cast<size_t>(n)].real() -
                   kronecker_symbol(Int(D), Int(m))) > 0.5)
        throw std::invalid_argument("kronecker_char: D not a discriminant (not periodic)");
    }
    return chi;
  }

  static DirichletCharacter from_table(long M, std::vector<std::complex<double>> t,
                                       long cond = 0) {
    DirichletCharacter chi;
    chi.modulus = M;
    chi.table = std::move(t);
    chi.conductor = cond ? cond : M;
    if (static_cast<long>(chi.table.size()) != M)
      throw std::invalid_argument("from_table: size mismatch");
    bool pr = true;
    for (long n = 0; n < M; ++n)
      if (std::gcd(n, M) == 1 && std::abs(chi.table[static_cast<size_t>(n)] - 1.0) > 1e-14)
        pr = false;
    chi.principal = pr;
    return chi;
  }
};

}  // namespace klver

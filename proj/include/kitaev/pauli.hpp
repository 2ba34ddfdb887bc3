#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace kitaev {

using cplx = std::complex<double>;

// Tolerance below which term coefficients are dropped during simplification.
inline constexpr double kCoeffTol = 1e-12;

// A weighted tensor product of single-qubit Paulis, encoded symplectically:
// qubit q carries X iff bit q of `x` is set and Z iff bit q of `z` is set
// (both set = Y). Qubit count is capped at 64 by the packed representation.
struct PauliString {
  cplx coeff{1.0, 0.0};
  std::uint32_t n_qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  PauliString() = default;
  PauliString(cplx c, std::uint32_t n, std::uint64_t xbits, std::uint64_t zbits)
      : coeff(c), n_qubits(n), x(xbits), z(zbits) {}

  static PauliString identity(std::uint32_t n_qubits, cplx coeff = 1.0);
  // pauli is one of 'I', 'X', 'Y', 'Z'.
  static PauliString single(std::uint32_t n_qubits, std::uint32_t qubit, char pauli,
                            cplx coeff = 1.0);
  // Parse a word like "XIZY" (leftmost character is qubit 0).
  static PauliString from_word(const std::string& word, cplx coeff = 1.0);

  char pauli_at(std::uint32_t qubit) const;
  bool is_identity_word() const { return x == 0 && z == 0; }
  bool is_hermitian() const;
  // Unit-modulus coefficient and real (so the string squares to identity).
  bool is_unit_hermitian() const;

  // 48-bit key giving lexicographic word order with I < X < Y < Z and
  // qubit 0 most significant.
  std::uint64_t word_key() const;

  std::string word() const;
  std::string to_string() const;
};

// Exact product a*b including the accumulated power-of-i phase.
PauliString multiply(const PauliString& a, const PauliString& b);

bool words_equal(const PauliString& a, const PauliString& b);
bool strings_commute(const PauliString& a, const PauliString& b);

// A sum of PauliStrings over a common qubit count.
struct PauliSum {
  std::uint32_t n_qubits = 0;
  std::vector<PauliString> terms;

  PauliSum() = default;
  explicit PauliSum(std::uint32_t n) : n_qubits(n) {}
  PauliSum(std::uint32_t n, std::vector<PauliString> t) : n_qubits(n), terms(std::move(t)) {}

  static PauliSum zero(std::uint32_t n) { return PauliSum(n); }
  static PauliSum from_string(const PauliString& s) {
    return PauliSum(s.n_qubits, {s});
  }

  std::size_t size() const { return terms.size(); }
  PauliSum& operator+=(const PauliString& s);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;
  std::string to_string() const;
};

PauliSum add(const PauliSum& a, const PauliSum& b);
PauliSum multiply(const PauliSum& a, const PauliSum& b);
PauliSum scale(const PauliSum& a, cplx factor);

// Merge equal words, drop coefficients below kCoeffTol, and order terms
// lexicographically by word. Idempotent.
PauliSum simplify(const PauliSum& s);

PauliSum commutator(const PauliSum& a, const PauliSum& b);
bool commutes(const PauliSum& a, const PauliSum& b);

// Jordan-Wigner image of the matter Majoranas c_{2n+parity} on a register of
// n_qubits: Z on qubits [0, n), then X (parity 0) or Y (parity 1) on qubit n.
PauliString jw_matter(std::uint32_t n, int parity, std::uint32_t n_qubits);

// Jordan-Wigner image of the bond Majoranas b^1/b^2 of edge nu in the
// dynamical-gauge layout (matter qubits [0, N/2), gauge qubit N/2 + nu).
// `which` is 1 or 2. The gauge orbital occupation convention is chosen so
// that the all-zeros computational state carries every standard-gauge edge
// occupied; with that choice both images are plain Z-string * X or Y.
PauliString jw_bond(std::uint32_t nu, int which, std::uint32_t n_spins,
                    std::uint32_t n_qubits);

// The edge operator 2 g^dag_nu g_nu - 1 (the gauge variable read along the
// standard orientation of edge nu): a single Z on the edge's gauge qubit.
PauliString gauge_z(std::uint32_t nu, std::uint32_t n_spins, std::uint32_t n_qubits);

// Fermionic lowering operator of JW mode `mode` as a two-term PauliSum.
// When `hole_convention` is set the roles of raising/lowering on the target
// qubit are exchanged (used for gauge modes, where |0> means occupied).
PauliSum jw_mode_lower(std::uint32_t mode, std::uint32_t n_qubits, bool hole_convention);
PauliSum jw_mode_raise(std::uint32_t mode, std::uint32_t n_qubits, bool hole_convention);

}  // namespace kitaev

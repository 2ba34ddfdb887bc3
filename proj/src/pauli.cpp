#include "kitaev/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace kitaev {

namespace {

void check_qubit_count(std::uint32_t n) {
  if (n == 0 || n > 64) {
    throw std::invalid_argument("PauliString supports 1..64 qubits, got " +
                                std::to_string(n));
  }
}

// Exponent of i picked up by the single-qubit product a*b, with codes
// 0=I, 1=X, 2=Z, 3=Y (x-bit | z-bit<<1). Cyclic products XY, YZ, ZX give +i.
int phase_exponent(unsigned a, unsigned b) {
  static const int table[4][4] = {
      // b:  I  X  Z  Y        a:
      {0, 0, 0, 0},  // I
      {0, 0, 3, 1},  // X  (XZ=-iY, XY=+iZ)
      {0, 1, 0, 3},  // Z  (ZX=+iY, ZY=-iX)
      {0, 3, 1, 0},  // Y  (YX=-iZ, YZ=+iX)
  };
  return table[a][b];
}

cplx i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString PauliString::identity(std::uint32_t n_qubits, cplx coeff) {
  check_qubit_count(n_qubits);
  return PauliString(coeff, n_qubits, 0, 0);
}

PauliString PauliString::single(std::uint32_t n_qubits, std::uint32_t qubit, char pauli,
                                cplx coeff) {
  check_qubit_count(n_qubits);
  if (qubit >= n_qubits) {
    throw std::out_of_range("qubit index out of range");
  }
  std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (pauli) {
    case 'I': return PauliString(coeff, n_qubits, 0, 0);
    case 'X': return PauliString(coeff, n_qubits, bit, 0);
    case 'Y': return PauliString(coeff, n_qubits, bit, bit);
    case 'Z': return PauliString(coeff, n_qubits, 0, bit);
    default: throw std::invalid_argument("pauli must be one of I,X,Y,Z");
  }
}

PauliString PauliString::from_word(const std::string& word, cplx coeff) {
  check_qubit_count(static_cast<std::uint32_t>(word.size()));
  PauliString s(coeff, static_cast<std::uint32_t>(word.size()), 0, 0);
  for (std::uint32_t q = 0; q < word.size(); ++q) {
    std::uint64_t bit = std::uint64_t{1} << q;
    switch (word[q]) {
      case 'I': break;
      case 'X': s.x |= bit; break;
      case 'Y': s.x |= bit; s.z |= bit; break;
      case 'Z': s.z |= bit; break;
      default: throw std::invalid_argument("bad pauli character in word");
    }
  }
  return s;
}

char PauliString::pauli_at(std::uint32_t qubit) const {
  bool xb = (x >> qubit) & 1;
  bool zb = (z >> qubit) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

bool PauliString::is_hermitian() const { return std::abs(coeff.imag()) < kCoeffTol; }

bool PauliString::is_unit_hermitian() const {
  return is_hermitian() && std::abs(std::abs(coeff.real()) - 1.0) < kCoeffTol;
}

std::uint64_t PauliString::word_key() const {
  std::uint64_t key = 0;
  for (std::uint32_t q = 0; q < n_qubits; ++q) {
    bool xb = (x >> q) & 1;
    bool zb = (z >> q) & 1;
    // I < X < Y < Z
    std::uint64_t rank = xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
    key = (key << 2) | rank;
  }
  return key;
}

std::string PauliString::word() const {
  std::string w(n_qubits, 'I');
  for (std::uint32_t q = 0; q < n_qubits; ++q) {
    w[q] = pauli_at(q);
  }
  return w;
}

std::string PauliString::to_string() const {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "(%g%+gi) ", coeff.real(), coeff.imag());
  return std::string(buf) + word();
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("PauliString length mismatch");
  }
  int exponent = 0;
  std::uint64_t overlap = (a.x | a.z) & (b.x | b.z);
  while (overlap) {
    unsigned q = static_cast<unsigned>(std::countr_zero(overlap));
    overlap &= overlap - 1;
    unsigned ca = ((a.x >> q) & 1) | (((a.z >> q) & 1) << 1);
    unsigned cb = ((b.x >> q) & 1) | (((b.z >> q) & 1) << 1);
    exponent += phase_exponent(ca, cb);
  }
  return PauliString(a.coeff * b.coeff * i_power(exponent), a.n_qubits, a.x ^ b.x,
                     a.z ^ b.z);
}

bool words_equal(const PauliString& a, const PauliString& b) {
  return a.n_qubits == b.n_qubits && a.x == b.x && a.z == b.z;
}

bool strings_commute(const PauliString& a, const PauliString& b) {
  int anti = std::popcount(a.x & b.z) + std::popcount(a.z & b.x);
  return (anti % 2) == 0;
}

PauliSum& PauliSum::operator+=(const PauliString& s) {
  if (terms.empty() && n_qubits == 0) {
    n_qubits = s.n_qubits;
  }
  if (s.n_qubits != n_qubits) {
    throw std::invalid_argument("PauliSum length mismatch");
  }
  terms.push_back(s);
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& t : other.terms) {
    (*this) += t;
  }
  return *this;
}

PauliSum& PauliSum::operator*=(cplx factor) {
  for (auto& t : terms) {
    t.coeff *= factor;
  }
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits);
  out.terms.reserve(terms.size());
  for (const auto& t : terms) {
    // Words are Hermitian, so only the coefficient conjugates.
    out.terms.emplace_back(std::conj(t.coeff), t.n_qubits, t.x, t.z);
  }
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  PauliSum s = simplify(*this);
  for (const auto& t : s.terms) {
    if (std::abs(t.coeff.imag()) > tol) {
      return false;
    }
  }
  return true;
}

std::string PauliSum::to_string() const {
  std::string out;
  for (const auto& t : terms) {
    out += t.to_string();
    out += '\n';
  }
  return out;
}

PauliSum add(const PauliSum& a, const PauliSum& b) {
  PauliSum out = a;
  out += b;
  return out;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("PauliSum length mismatch");
  }
  PauliSum out(a.n_qubits);
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      out.terms.push_back(multiply(ta, tb));
    }
  }
  return simplify(out);
}

PauliSum scale(const PauliSum& a, cplx factor) {
  PauliSum out = a;
  out *= factor;
  return out;
}

PauliSum simplify(const PauliSum& s) {
  std::vector<PauliString> terms = s.terms;
  std::sort(terms.begin(), terms.end(), [](const PauliString& a, const PauliString& b) {
    return a.word_key() < b.word_key();
  });
  PauliSum out(s.n_qubits);
  for (const auto& t : terms) {
    if (!out.terms.empty() && words_equal(out.terms.back(), t)) {
      out.terms.back().coeff += t.coeff;
      if (std::abs(out.terms.back().coeff) < kCoeffTol) {
        out.terms.pop_back();
      }
    } else if (std::abs(t.coeff) >= kCoeffTol) {
      out.terms.push_back(t);
    }
  }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum ab = multiply(a, b);
  PauliSum ba = scale(multiply(b, a), -1.0);
  return simplify(add(ab, ba));
}

bool commutes(const PauliSum& a, const PauliSum& b) {
  return commutator(a, b).terms.empty();
}

namespace {

PauliString z_prefixed(std::uint32_t target, char pauli, std::uint32_t n_qubits) {
  if (target >= n_qubits) {
    throw std::out_of_range("JW mode index out of range");
  }
  std::uint64_t zmask = (target == 0) ? 0 : ((std::uint64_t{1} << target) - 1);
  PauliString s = PauliString::single(n_qubits, target, pauli);
  s.z |= zmask;
  return s;
}

}  // namespace

PauliString jw_matter(std::uint32_t n, int parity, std::uint32_t n_qubits) {
  if (parity != 0 && parity != 1) {
    throw std::invalid_argument("parity must be 0 or 1");
  }
  return z_prefixed(n, parity == 0 ? 'X' : 'Y', n_qubits);
}

PauliString jw_bond(std::uint32_t nu, int which, std::uint32_t n_spins,
                    std::uint32_t n_qubits) {
  if (which != 1 && which != 2) {
    throw std::invalid_argument("which must be 1 or 2");
  }
  if (n_spins % 2 != 0) {
    throw std::invalid_argument("spin count must be even");
  }
  return z_prefixed(n_spins / 2 + nu, which == 1 ? 'X' : 'Y', n_qubits);
}

PauliString gauge_z(std::uint32_t nu, std::uint32_t n_spins, std::uint32_t n_qubits) {
  return PauliString::single(n_qubits, n_spins / 2 + nu, 'Z');
}

PauliSum jw_mode_lower(std::uint32_t mode, std::uint32_t n_qubits, bool hole_convention) {
  // sigma^- = (X + iY)/2, sigma^+ = (X - iY)/2.
  PauliString sx = z_prefixed(mode, 'X', n_qubits);
  PauliString sy = z_prefixed(mode, 'Y', n_qubits);
  double ysign = hole_convention ? -1.0 : 1.0;
  PauliSum out(n_qubits);
  sx.coeff = 0.5;
  sy.coeff = cplx(0.0, 0.5 * ysign);
  out += sx;
  out += sy;
  return out;
}

PauliSum jw_mode_raise(std::uint32_t mode, std::uint32_t n_qubits, bool hole_convention) {
  return jw_mode_lower(mode, n_qubits, hole_convention).adjoint();
}

}  // namespace kitaev

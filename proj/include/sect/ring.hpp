#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sect/errors.hpp"

namespace sect {

enum class RingKind { PrimeField, ExtField, MixedDVR, EquiDVR };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// An element of a coefficient ring, stored by its canonical representative.
/// Layout depends on the ring kind:
///   PrimeField(p): one entry in [0,p)
///   ExtField(p,m): m entries in [0,p), coefficients of the generator powers
///   MixedDVR(p,k): one entry in [0,p^k)
///   EquiDVR(p,m,k): k*m entries; block j holds the t^j coefficient over F_{p^m}
class Elem {
 public:
  Elem() = default;
  const RingPtr& ring() const { return ring_; }
  const std::vector<int64_t>& data() const { return c_; }
  bool operator==(const Elem& o) const { return c_ == o.c_; }
  bool operator!=(const Elem& o) const { return c_ != o.c_; }
  bool operator<(const Elem& o) const { return c_ < o.c_; }  // representative order

 private:
  friend class Ring;
  Elem(RingPtr r, std::vector<int64_t> c) : ring_(std::move(r)), c_(std::move(c)) {}
  RingPtr ring_;
  std::vector<int64_t> c_;
};

/// Coefficient domain: a finite field or a truncated discrete valuation ring.
/// Z/p^k has uniformizer p; F_{p^m}[t]/(t^k) has uniformizer t. Extension
/// fields use the lexicographically first irreducible monic minimal polynomial.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr prime_field(int64_t p);
  static RingPtr ext_field(int64_t p, int m);
  static RingPtr mixed_dvr(int64_t p, int k);
  static RingPtr equi_dvr(int64_t p, int m, int k);

  RingKind kind() const { return kind_; }
  int64_t p() const { return p_; }
  int m() const { return m_; }
  int k() const { return k_; }
  bool is_field() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::ExtField; }
  bool is_dvr() const { return !is_field(); }
  int64_t size() const;           // number of elements
  int64_t residue_size() const;   // p^m

  /// Structural equality (kind, p, m, k).
  bool same(const Ring& o) const;
  bool same(const RingPtr& o) const { return same(*o); }

  Elem zero() const;
  Elem one() const;
  Elem from_int(int64_t v) const;
  Elem uniformizer() const;  // DVR only
  Elem make(std::vector<int64_t> raw) const;  // canonicalize arbitrary representatives

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem inv(const Elem& a) const;  // throws NonUnit

  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;
  bool is_unit(const Elem& a) const;

  /// Largest j < k with a in (pi^j); nullopt when the representative is 0
  /// (indistinguishable from 0 at precision k). Throws NotDVR for fields.
  std::optional<int> valuation(const Elem& a) const;

  RingPtr residue_field() const;        // DVR only
  Elem residue(const Elem& a) const;    // image in the residue field
  Elem lift(const Elem& res) const;     // canonical lift of a residue element
  Elem unit_part(const Elem& a) const;  // a / pi^v(a); throws PrecisionExhausted on 0

  /// Deterministic enumeration of all ring elements, index in [0, size()).
  Elem element(int64_t index) const;
  int64_t index_of(const Elem& a) const;

  std::string to_string(const Elem& a) const;
  std::string descriptor() const;  // e.g. Zmod(3^3), GF(9)=GF(3,2), GF(3)[[t]]/t^3

  /// Coefficients of the minimal polynomial x^m + c_{m-1}x^{m-1} + ... + c_0
  /// (ExtField only), stored c_0..c_{m-1}.
  const std::vector<int64_t>& min_poly() const { return minpoly_; }

 private:
  Ring() = default;
  RingKind kind_ = RingKind::PrimeField;
  int64_t p_ = 0;
  int m_ = 1;
  int k_ = 1;
  int64_t pk_ = 0;                 // p^k for MixedDVR
  std::vector<int64_t> minpoly_;   // ExtField / EquiDVR residue minimal polynomial
  mutable RingPtr residue_;        // cached

  void check(const Elem& a) const;
  void check2(const Elem& a, const Elem& b) const;
  // residue-field arithmetic on raw blocks (ExtField representation)
  std::vector<int64_t> fadd(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> fsub(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> fmul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> finv(const std::vector<int64_t>& a) const;
  bool fzero(const std::vector<int64_t>& a) const;
};

/// Ring homomorphism with explicit source and target.
struct Embedding {
  RingPtr from;
  RingPtr to;
  std::function<Elem(const Elem&)> map;
};

/// Residue-field extension of degree m; the uniformizer is unchanged.
/// MixedDVR with m > 1 is unsupported (no faithful truncated Witt model).
Embedding extend_unramified(const RingPtr& R, int m);

/// EquiDVR(p,m,k) -> EquiDVR(p,m,2k) with t |-> s^2; valuations double.
Embedding extend_ramified_sqrt(const RingPtr& R);

/// Parse a ring descriptor: Zmod(3^3), GF(3), GF(9)=GF(3,2), GF(3)[[t]]/t^3,
/// GF(9)[[t]]/t^3.
RingPtr parse_ring(const std::string& text);

}  // namespace sect

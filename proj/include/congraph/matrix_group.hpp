#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "congraph/quotient_ring.hpp"

namespace congraph {

/// Which finite group the coset graphs are built in.
///  - Sl2:    SL2(R_g)
///  - PglBar: (SL2(R_g) x| F) / F_q^x I, F = {diag(c, 1) : c in F_q^x}
///  - PglM:   PGL2(R_g) = GL2(R_g) / R_g^x I
enum class Variant { Sl2, PglBar, PglM };

std::string_view to_string(Variant v);
/// Accepts "sl2", "pgl-bar", "pgl-m". Throws std::invalid_argument.
Variant parse_variant(std::string_view text);

/// 2x2 matrix over R_g, entries row-major.
struct Mat2 {
  std::array<RgElem, 4> e{};

  RgElem a() const { return e[0]; }
  RgElem b() const { return e[1]; }
  RgElem c() const { return e[2]; }
  RgElem d() const { return e[3]; }

  constexpr auto operator<=>(const Mat2&) const = default;
};

/// Vertex identity in a levelled coset graph: the least packed encoding
/// over all canonical-scaled members of the coset h H_level.
struct CosetKey {
  int level = 0;
  uint64_t packed = 0;

  constexpr auto operator<=>(const CosetKey&) const = default;
};

class MatrixGroup;
using GroupPtr = std::shared_ptr<const MatrixGroup>;

/// One of the three matrix groups over a fixed R_g, together with its level
/// subgroups H_0, ..., H_{n-1} (and the first ray subgroup H_n).
///
/// Elements are always handled in canonical-scaled form: for the PGL
/// variants the representative of the scalar class with least encoding.
/// Packed encodings concatenate the four entry codes in fixed bit width,
/// so numeric order on packed values is lexicographic order on entries.
class MatrixGroup {
 public:
  /// Rings above this order cannot be packed into 64 bits.
  static constexpr uint32_t kMaxRingOrder = uint32_t{1} << 16;

  static GroupPtr create(Variant variant, RingPtr ring);

  Variant variant() const { return variant_; }
  const QuotientRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int degree() const { return ring_->degree(); }

  /// |group|; equals |SL2(R_g)| for all three variants.
  uint64_t order() const { return order_; }

  Mat2 identity() const { return Mat2{{ring_->one(), ring_->zero(), ring_->zero(), ring_->one()}}; }
  /// Validates the determinant for the variant and canonical-scales.
  /// Throws std::invalid_argument when the matrix is not a group element.
  Mat2 make(RgElem a, RgElem b, RgElem c, RgElem d) const;
  bool is_element(const Mat2& m) const;

  /// Plain matrix product, no scaling.
  Mat2 mul_raw(const Mat2& x, const Mat2& y) const;
  /// Group product (canonical-scaled).
  Mat2 mul(const Mat2& x, const Mat2& y) const { return canonical_scale(mul_raw(x, y)); }
  Mat2 inv(const Mat2& m) const;
  RgElem det(const Mat2& m) const;
  /// The member of m's scalar class with least encoding; identity map for Sl2.
  Mat2 canonical_scale(const Mat2& m) const;
  /// The scalar subgroup as ring elements: {1}, F_q^x, or R_g^x.
  const std::vector<RgElem>& scalars() const { return scalars_; }

  uint64_t pack(const Mat2& m) const {
    return (uint64_t{m.e[0].code} << (3 * bits_)) | (uint64_t{m.e[1].code} << (2 * bits_)) |
           (uint64_t{m.e[2].code} << bits_) | m.e[3].code;
  }
  Mat2 unpack(uint64_t packed) const;
  /// Entry codes as fixed-width base-p digits, most significant first,
  /// row-major.
  std::vector<uint8_t> encode(const Mat2& m) const;
  std::string key_hex(const CosetKey& key) const;
  /// Inverse of encode / key_hex. Throws std::invalid_argument.
  Mat2 decode(const std::vector<uint8_t>& bytes) const;
  uint64_t parse_key_hex(std::string_view hex) const;

  /// Level subgroup H_i (0 <= i <= n-1) as sorted canonical elements.
  const std::vector<Mat2>& subgroup(int level) const;
  /// H_n: the stabilizer image at the first ray level, used for cusps.
  const std::vector<Mat2>& ray_subgroup() const { return subgroups_.back(); }
  /// Small generating set of H_i (i <= n).
  std::vector<Mat2> subgroup_generators(int level) const;
  /// Generating set of the whole group: elementary matrices, plus diag(c, 1)
  /// for the PGL variants and diag(u, 1) over square-class representatives
  /// for PglM.
  std::vector<Mat2> full_group_generators() const;

  /// Left-coset representatives of H_from / (H_from n H_to), for adjacent
  /// levels (to = from +- 1, to <= n). Neighbours of h H_from at level to are
  /// h x H_to for x in this list.
  const std::vector<Mat2>& transversal(int from, int to) const;

  CosetKey coset_key(const Mat2& h, int level) const { return {level, coset_key_packed(h, level)}; }
  uint64_t coset_key_packed(const Mat2& h, int level) const;

  std::string to_string(const Mat2& m) const;
  /// Parses "[[a,b],[c,d]]" with polynomial entries; no validation.
  Mat2 parse_raw(std::string_view text) const;

 private:
  MatrixGroup(Variant variant, RingPtr ring);

  const std::vector<Mat2>& level_elements(int level) const;
  Mat2 scale(RgElem s, const Mat2& m) const;
  template <bool Scaled>
  uint64_t min_key_tables(const Mat2& h, const std::vector<Mat2>& elems) const;
  uint64_t min_key_generic(const Mat2& h, const std::vector<Mat2>& elems) const;

  Variant variant_;
  RingPtr ring_;
  unsigned bits_;
  uint64_t order_;
  std::vector<RgElem> scalars_;
  // For each ring element x: least code of s*x over scalars s, and the
  // scalars attaining it (CSR layout).
  std::vector<uint32_t> scaled_min_;
  std::vector<uint32_t> argmin_offsets_;
  std::vector<RgElem> argmin_scalars_;
  std::vector<std::vector<Mat2>> subgroups_;       // levels 0..n
  std::vector<std::vector<Mat2>> up_transversal_;  // [i]: H_i / (H_i n H_{i+1})
  std::vector<std::vector<Mat2>> down_transversal_;  // [i]: H_i / (H_i n H_{i-1}), i >= 1
};

/// |SL2(R_g)| = q^{3n} prod_i (1 - q^{-2 d_i}), exactly.
uint64_t sl2_order(const QuotientRing& ring);

struct Closure {
  bool complete = false;
  std::vector<uint64_t> packed;  // sorted; the full subgroup iff complete

  size_t size() const { return packed.size(); }
  bool contains(uint64_t key) const;
};

/// Subgroup generated by the given elements, by breadth-first right
/// multiplication from the identity. Stops with complete = false once more
/// than cap elements are found.
Closure group_closure(const MatrixGroup& group, const std::vector<Mat2>& generators,
                      uint64_t cap = uint64_t{1} << 24);

/// T = {a in S : diag(a^{-1}, a) in <H_0, H_1>}, given that closure in Sl2.
std::vector<RgElem> t_subgroup(const MatrixGroup& sl2, const Closure& closure);

}  // namespace congraph

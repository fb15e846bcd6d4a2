#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pgraph {

enum class GroupKind : std::uint8_t { Nk, FreeMonoid, FreeProductN2N, LexZ2 };

class GroupElement;

// One of the built-in quasi-lattice ordered pairs (G, P).
class Group {
 public:
  static Group nk(int k);
  static Group free_monoid(int letters);
  static Group free_product_n2n();
  static Group lex_z2();

  GroupKind kind() const { return kind_; }
  // k for Nk, alphabet size for FreeMonoid, 0 otherwise.
  int rank() const { return rank_; }
  std::string name() const;

  GroupElement identity() const;

  // Edge colours of a skeleton: Nk uses e_1..e_k, FreeMonoid its letters,
  // FreeProductN2N uses 0 = (1,0), 1 = (0,1) in the N^2 factor and 2 = the N generator.
  int colour_count() const;
  GroupElement colour_degree(int colour) const;
  bool colours_commute(int a, int b) const;

  friend bool operator==(const Group&, const Group&) = default;
  friend auto operator<=>(const Group&, const Group&) = default;

 private:
  Group(GroupKind kind, int rank) : kind_(kind), rank_(rank) {}
  GroupKind kind_ = GroupKind::Nk;
  int rank_ = 0;
};

// A block of a word in Z^2 * Z: either a Z^2 vector (pair) or a Z scalar.
struct Block {
  bool pair = true;
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Block&, const Block&) = default;
};

// Normal-form element of the ambient group G. Elements of P are the ones
// for which in_positive_cone() holds.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement nk(std::vector<std::int64_t> coords);
  // Letters are 1..letters; a negative entry is the inverse letter. The word is reduced.
  static GroupElement word(int letters, const std::vector<std::int64_t>& signed_letters);
  static GroupElement blocks(const std::vector<Block>& blocks);
  static GroupElement lex(std::int64_t a, std::int64_t b);

  const Group& group() const { return group_; }
  GroupKind kind() const { return group_.kind(); }
  std::span<const std::int64_t> raw() const { return data_; }
  std::int64_t coord(std::size_t i) const { return data_.at(i); }
  std::vector<Block> block_list() const;
  std::size_t block_count() const;

  bool is_identity() const { return data_.empty() || all_zero(); }
  // Sum of absolute values of all exponents; used for canonical ordering and bounds.
  std::int64_t length() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.data_ == b.data_;
  }
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

 private:
  GroupElement(Group g, std::vector<std::int64_t> data) : group_(g), data_(std::move(data)) {}
  bool all_zero() const;

  Group group_ = Group::nk(0);
  std::vector<std::int64_t> data_;

  friend class Group;
  friend GroupElement multiply(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);
};

using JoinResult = std::optional<GroupElement>;  // nullopt is the value "infinity"

GroupElement multiply(const GroupElement& p, const GroupElement& q);
GroupElement inverse(const GroupElement& p);
bool in_positive_cone(const GroupElement& p);
bool leq(const GroupElement& p, const GroupElement& q);
JoinResult join(const GroupElement& p, const GroupElement& q);
// The unique x in P with p x = q.
GroupElement left_quotient(const GroupElement& p, const GroupElement& q);
std::vector<GroupElement> vee_closure(const std::vector<GroupElement>& f);
std::vector<GroupElement> minimal_elements(const std::vector<GroupElement>& f);

std::string to_string(const GroupElement& p);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& p) const;
};

// Finite region of P used to truncate infinite graphs and to drive enumeration.
class DegreeBound {
 public:
  static DegreeBound box(std::vector<std::int64_t> extents);
  static DegreeBound length(const Group& g, std::int64_t max_length);
  static DegreeBound blocks(std::int64_t max_blocks, std::int64_t max_entry);
  static DegreeBound lex(std::int64_t max_a, std::int64_t max_abs_b);

  const Group& group() const { return group_; }
  bool contains(const GroupElement& p) const;
  // All members, in canonical order.
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::string describe() const { return description_; }

 private:
  enum class Shape { Box, Length, Blocks, Lex };
  DegreeBound(Group g, Shape s, std::vector<std::int64_t> params);
  void enumerate();

  Group group_;
  Shape shape_;
  std::vector<std::int64_t> params_;
  std::vector<GroupElement> elements_;
  std::string description_;
};

}  // namespace pgraph

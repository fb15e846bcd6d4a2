#include "pgraph/qlo.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "pgraph/error.hpp"

namespace pgraph {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in group arithmetic");
  return r;
}

std::int64_t checked_neg(std::int64_t a) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(std::int64_t{0}, a, &r)) throw ArithmeticOverflow("integer overflow in group arithmetic");
  return r;
}

std::int64_t abs_len(std::int64_t a) { return a < 0 ? checked_neg(a) : a; }

void require_same(const GroupElement& p, const GroupElement& q) {
  if (p.group() != q.group())
    throw InstanceMismatch("group elements from " + p.group().name() + " and " + q.group().name());
}

// Free-product blocks are stored as triples [tag, x, y]; tag 0 is a Z^2 block, tag 1 a Z block.
std::vector<std::int64_t> encode(const std::vector<Block>& blocks) {
  std::vector<Block> stack;
  for (Block b : blocks) {
    if (!b.pair) b.y = 0;
    if (b.x == 0 && b.y == 0) continue;
    if (!stack.empty() && stack.back().pair == b.pair) {
      Block& top = stack.back();
      top.x = checked_add(top.x, b.x);
      top.y = checked_add(top.y, b.y);
      if (top.x == 0 && top.y == 0) stack.pop_back();
    } else {
      stack.push_back(b);
    }
  }
  std::vector<std::int64_t> out;
  out.reserve(stack.size() * 3);
  for (const Block& b : stack) {
    out.push_back(b.pair ? 0 : 1);
    out.push_back(b.x);
    out.push_back(b.y);
  }
  return out;
}

std::vector<std::int64_t> reduce_word(const std::vector<std::int64_t>& letters) {
  std::vector<std::int64_t> stack;
  for (std::int64_t l : letters) {
    if (!stack.empty() && stack.back() == -l)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return stack;
}

bool block_leq(const Block& a, const Block& b) {
  return a.pair == b.pair && a.x <= b.x && a.y <= b.y;
}

}  // namespace

Group Group::nk(int k) {
  if (k < 0) throw PreconditionError("N^k needs k >= 0");
  return Group(GroupKind::Nk, k);
}

Group Group::free_monoid(int letters) {
  if (letters < 1) throw PreconditionError("free monoid needs at least one letter");
  return Group(GroupKind::FreeMonoid, letters);
}

Group Group::free_product_n2n() { return Group(GroupKind::FreeProductN2N, 0); }
Group Group::lex_z2() { return Group(GroupKind::LexZ2, 0); }

std::string Group::name() const {
  switch (kind_) {
    case GroupKind::Nk:
      return "N^" + std::to_string(rank_);
    case GroupKind::FreeMonoid:
      return "F" + std::to_string(rank_) + "+";
    case GroupKind::FreeProductN2N:
      return "N^2*N";
    case GroupKind::LexZ2:
      return "lex Z^2";
  }
  return "?";
}

GroupElement Group::identity() const {
  switch (kind_) {
    case GroupKind::Nk:
      return GroupElement(*this, std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0));
    case GroupKind::LexZ2:
      return GroupElement(*this, {0, 0});
    default:
      return GroupElement(*this, {});
  }
}

int Group::colour_count() const {
  switch (kind_) {
    case GroupKind::Nk:
    case GroupKind::FreeMonoid:
      return rank_;
    case GroupKind::FreeProductN2N:
      return 3;
    case GroupKind::LexZ2:
      return 0;
  }
  return 0;
}

GroupElement Group::colour_degree(int colour) const {
  if (colour < 0 || colour >= colour_count())
    throw PreconditionError("colour " + std::to_string(colour) + " out of range for " + name());
  switch (kind_) {
    case GroupKind::Nk: {
      std::vector<std::int64_t> v(static_cast<std::size_t>(rank_), 0);
      v[static_cast<std::size_t>(colour)] = 1;
      return GroupElement(*this, v);
    }
    case GroupKind::FreeMonoid:
      return GroupElement::word(rank_, {colour + 1});
    case GroupKind::FreeProductN2N:
      if (colour == 0) return GroupElement::blocks({{true, 1, 0}});
      if (colour == 1) return GroupElement::blocks({{true, 0, 1}});
      return GroupElement::blocks({{false, 1, 0}});
    case GroupKind::LexZ2:
      break;
  }
  throw PreconditionError("no colours");
}

bool Group::colours_commute(int a, int b) const {
  switch (kind_) {
    case GroupKind::Nk:
      return true;
    case GroupKind::FreeMonoid:
      return a == b;
    case GroupKind::FreeProductN2N:
      return a == b || (a < 2 && b < 2);
    case GroupKind::LexZ2:
      return true;
  }
  return false;
}

GroupElement GroupElement::nk(std::vector<std::int64_t> coords) {
  Group g = Group::nk(static_cast<int>(coords.size()));
  return GroupElement(g, std::move(coords));
}

GroupElement GroupElement::word(int letters, const std::vector<std::int64_t>& signed_letters) {
  for (std::int64_t l : signed_letters)
    if (l == 0 || abs_len(l) > letters) throw PreconditionError("letter out of range");
  return GroupElement(Group::free_monoid(letters), reduce_word(signed_letters));
}

GroupElement GroupElement::blocks(const std::vector<Block>& blocks) {
  return GroupElement(Group::free_product_n2n(), encode(blocks));
}

GroupElement GroupElement::lex(std::int64_t a, std::int64_t b) { return GroupElement(Group::lex_z2(), {a, b}); }

std::vector<Block> GroupElement::block_list() const {
  if (kind() != GroupKind::FreeProductN2N) throw PreconditionError("block_list on a non free-product element");
  std::vector<Block> out;
  for (std::size_t i = 0; i + 3 <= data_.size(); i += 3) out.push_back({data_[i] == 0, data_[i + 1], data_[i + 2]});
  return out;
}

std::size_t GroupElement::block_count() const {
  return kind() == GroupKind::FreeProductN2N ? data_.size() / 3 : 0;
}

bool GroupElement::all_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t GroupElement::length() const {
  std::int64_t total = 0;
  switch (kind()) {
    case GroupKind::FreeMonoid:
      return static_cast<std::int64_t>(data_.size());
    case GroupKind::FreeProductN2N:
      for (std::size_t i = 0; i < data_.size(); i += 3)
        total = checked_add(total, checked_add(abs_len(data_[i + 1]), abs_len(data_[i + 2])));
      return total;
    default:
      for (std::int64_t x : data_) total = checked_add(total, abs_len(x));
      return total;
  }
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (auto c = a.group_ <=> b.group_; c != 0) return c;
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (auto c = a.data_.size() <=> b.data_.size(); c != 0) return c;
  return a.data_ <=> b.data_;
}

GroupElement multiply(const GroupElement& p, const GroupElement& q) {
  require_same(p, q);
  switch (p.kind()) {
    case GroupKind::Nk:
    case GroupKind::LexZ2: {
      std::vector<std::int64_t> r(p.data_.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(p.data_[i], q.data_[i]);
      return GroupElement(p.group_, std::move(r));
    }
    case GroupKind::FreeMonoid: {
      std::vector<std::int64_t> w = p.data_;
      w.insert(w.end(), q.data_.begin(), q.data_.end());
      return GroupElement(p.group_, reduce_word(w));
    }
    case GroupKind::FreeProductN2N: {
      std::vector<Block> b = p.block_list();
      std::vector<Block> c = q.block_list();
      b.insert(b.end(), c.begin(), c.end());
      return GroupElement(p.group_, encode(b));
    }
  }
  throw PreconditionError("unknown group kind");
}

GroupElement inverse(const GroupElement& p) {
  switch (p.kind()) {
    case GroupKind::Nk:
    case GroupKind::LexZ2: {
      std::vector<std::int64_t> r(p.data_.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_neg(p.data_[i]);
      return GroupElement(p.group_, std::move(r));
    }
    case GroupKind::FreeMonoid: {
      std::vector<std::int64_t> w(p.data_.rbegin(), p.data_.rend());
      for (auto& l : w) l = -l;
      return GroupElement(p.group_, std::move(w));
    }
    case GroupKind::FreeProductN2N: {
      std::vector<Block> b = p.block_list();
      std::reverse(b.begin(), b.end());
      for (auto& blk : b) {
        blk.x = checked_neg(blk.x);
        blk.y = checked_neg(blk.y);
      }
      return GroupElement(p.group_, encode(b));
    }
  }
  throw PreconditionError("unknown group kind");
}

bool in_positive_cone(const GroupElement& p) {
  auto d = p.raw();
  switch (p.kind()) {
    case GroupKind::Nk:
      return std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x >= 0; });
    case GroupKind::FreeMonoid:
      return std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x > 0; });
    case GroupKind::FreeProductN2N:
      for (const Block& b : p.block_list())
        if (b.x < 0 || b.y < 0) return false;
      return true;
    case GroupKind::LexZ2:
      return (d[0] == 0 && d[1] >= 0) || d[0] >= 1;
  }
  return false;
}

bool leq(const GroupElement& p, const GroupElement& q) {
  require_same(p, q);
  return in_positive_cone(multiply(inverse(p), q));
}

JoinResult join(const GroupElement& p, const GroupElement& q) {
  require_same(p, q);
  if (!in_positive_cone(p) || !in_positive_cone(q)) throw PreconditionError("join of elements outside P");
  switch (p.kind()) {
    case GroupKind::Nk: {
      std::vector<std::int64_t> r(p.raw().size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(p.coord(i), q.coord(i));
      return GroupElement::nk(std::move(r));
    }
    case GroupKind::FreeMonoid:
    case GroupKind::LexZ2:
      if (leq(p, q)) return q;
      if (leq(q, p)) return p;
      return std::nullopt;
    case GroupKind::FreeProductN2N: {
      if (leq(p, q)) return q;
      if (leq(q, p)) return p;
      std::vector<Block> a = p.block_list();
      std::vector<Block> b = q.block_list();
      if (a.size() != b.size() || a.empty()) return std::nullopt;
      std::size_t last = a.size() - 1;
      for (std::size_t i = 0; i < last; ++i)
        if (!(a[i] == b[i])) return std::nullopt;
      if (a[last].pair != b[last].pair) return std::nullopt;
      a[last].x = std::max(a[last].x, b[last].x);
      a[last].y = std::max(a[last].y, b[last].y);
      return GroupElement::blocks(a);
    }
  }
  return std::nullopt;
}

GroupElement left_quotient(const GroupElement& p, const GroupElement& q) {
  require_same(p, q);
  GroupElement x = multiply(inverse(p), q);
  if (!in_positive_cone(x)) throw PreconditionError(to_string(p) + " is not below " + to_string(q));
  return x;
}

std::vector<GroupElement> vee_closure(const std::vector<GroupElement>& f) {
  std::set<GroupElement> closed(f.begin(), f.end());
  for (const auto& p : closed)
    if (!in_positive_cone(p)) throw PreconditionError("vee_closure of an element outside P");
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<GroupElement> items(closed.begin(), closed.end());
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i + 1; j < items.size(); ++j)
        if (auto r = join(items[i], items[j]); r && closed.insert(*r).second) grew = true;
  }
  return {closed.begin(), closed.end()};
}

std::vector<GroupElement> minimal_elements(const std::vector<GroupElement>& f) {
  if (f.empty()) throw PreconditionError("minimal_elements of an empty set");
  std::set<GroupElement> items(f.begin(), f.end());
  std::vector<GroupElement> out;
  for (const auto& p : items) {
    bool minimal = std::none_of(items.begin(), items.end(),
                                [&](const GroupElement& q) { return !(q == p) && leq(q, p); });
    if (minimal) out.push_back(p);
  }
  return out;
}

std::string to_string(const GroupElement& p) {
  std::ostringstream os;
  auto d = p.raw();
  switch (p.kind()) {
    case GroupKind::Nk:
    case GroupKind::LexZ2:
      os << '(';
      for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
      os << ')';
      break;
    case GroupKind::FreeMonoid:
      if (d.empty()) os << 'e';
      for (std::int64_t l : d) os << static_cast<char>(l > 0 ? 'a' + (l - 1) : 'A' + (-l - 1));
      break;
    case GroupKind::FreeProductN2N: {
      os << '[';
      bool first = true;
      for (const Block& b : p.block_list()) {
        os << (first ? "" : ",");
        first = false;
        if (b.pair)
          os << '(' << b.x << ',' << b.y << ')';
        else
          os << b.x;
      }
      os << ']';
      break;
    }
  }
  return os.str();
}

std::size_t GroupElementHash::operator()(const GroupElement& p) const {
  std::size_t h = static_cast<std::size_t>(p.kind()) * 1000003u + static_cast<std::size_t>(p.group().rank());
  for (std::int64_t x : p.raw()) h = h * 1099511628211ull ^ std::hash<std::int64_t>{}(x);
  return h;
}

DegreeBound::DegreeBound(Group g, Shape s, std::vector<std::int64_t> params)
    : group_(g), shape_(s), params_(std::move(params)) {
  for (std::int64_t x : params_)
    if (x < 0) throw PreconditionError("negative degree bound");
  enumerate();
}

DegreeBound DegreeBound::box(std::vector<std::int64_t> extents) {
  Group g = Group::nk(static_cast<int>(extents.size()));
  return DegreeBound(g, Shape::Box, std::move(extents));
}

DegreeBound DegreeBound::length(const Group& g, std::int64_t max_length) {
  if (g.kind() == GroupKind::LexZ2) throw PreconditionError("length bound is not defined for lex Z^2");
  return DegreeBound(g, Shape::Length, {max_length});
}

DegreeBound DegreeBound::blocks(std::int64_t max_blocks, std::int64_t max_entry) {
  return DegreeBound(Group::free_product_n2n(), Shape::Blocks, {max_blocks, max_entry});
}

DegreeBound DegreeBound::lex(std::int64_t max_a, std::int64_t max_abs_b) {
  return DegreeBound(Group::lex_z2(), Shape::Lex, {max_a, max_abs_b});
}

bool DegreeBound::contains(const GroupElement& p) const {
  if (p.group() != group_ || !in_positive_cone(p)) return false;
  switch (shape_) {
    case Shape::Box:
      for (std::size_t i = 0; i < params_.size(); ++i)
        if (p.coord(i) > params_[i]) return false;
      return true;
    case Shape::Length:
      return p.length() <= params_[0];
    case Shape::Blocks:
      if (static_cast<std::int64_t>(p.block_count()) > params_[0]) return false;
      for (const Block& b : p.block_list())
        if (b.x > params_[1] || b.y > params_[1]) return false;
      return true;
    case Shape::Lex:
      return p.coord(0) <= params_[0] && abs_len(p.coord(1)) <= params_[1];
  }
  return false;
}

void DegreeBound::enumerate() {
  std::vector<GroupElement> out;
  std::ostringstream desc;
  switch (shape_) {
    case Shape::Box: {
      desc << "box";
      for (auto x : params_) desc << ' ' << x;
      std::vector<std::int64_t> cur(params_.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == cur.size()) {
          out.push_back(GroupElement::nk(cur));
          return;
        }
        for (std::int64_t v = 0; v <= params_[i]; ++v) {
          cur[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
      break;
    }
    case Shape::Length: {
      desc << "length " << params_[0];
      std::int64_t max_len = params_[0];
      if (group_.kind() == GroupKind::Nk) {
        std::vector<std::int64_t> cur(static_cast<std::size_t>(group_.rank()), 0);
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
          if (i == cur.size()) {
            out.push_back(GroupElement::nk(cur));
            return;
          }
          for (std::int64_t v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
          }
        };
        rec(0, max_len);
      } else if (group_.kind() == GroupKind::FreeMonoid) {
        std::vector<std::int64_t> cur;
        std::function<void()> rec = [&]() {
          out.push_back(GroupElement::word(group_.rank(), cur));
          if (static_cast<std::int64_t>(cur.size()) == max_len) return;
          for (int l = 1; l <= group_.rank(); ++l) {
            cur.push_back(l);
            rec();
            cur.pop_back();
          }
        };
        rec();
      } else {
        std::vector<Block> cur;
        std::function<void(std::int64_t)> rec = [&](std::int64_t left) {
          out.push_back(GroupElement::blocks(cur));
          bool last_pair = !cur.empty() && cur.back().pair;
          bool last_scalar = !cur.empty() && !cur.back().pair;
          if (!last_pair)
            for (std::int64_t x = 0; x <= left; ++x)
              for (std::int64_t y = 0; x + y <= left; ++y) {
                if (x + y == 0) continue;
                cur.push_back({true, x, y});
                rec(left - x - y);
                cur.pop_back();
              }
          if (!last_scalar)
            for (std::int64_t x = 1; x <= left; ++x) {
              cur.push_back({false, x, 0});
              rec(left - x);
              cur.pop_back();
            }
        };
        rec(max_len);
      }
      break;
    }
    case Shape::Blocks: {
      desc << "blocks " << params_[0] << " entries " << params_[1];
      std::int64_t m = params_[1];
      std::vector<Block> cur;
      std::function<void()> rec = [&]() {
        out.push_back(GroupElement::blocks(cur));
        if (static_cast<std::int64_t>(cur.size()) == params_[0]) return;
        bool last_pair = !cur.empty() && cur.back().pair;
        bool last_scalar = !cur.empty() && !cur.back().pair;
        if (!last_pair)
          for (std::int64_t x = 0; x <= m; ++x)
            for (std::int64_t y = 0; y <= m; ++y) {
              if (x + y == 0) continue;
              cur.push_back({true, x, y});
              rec();
              cur.pop_back();
            }
        if (!last_scalar)
          for (std::int64_t x = 1; x <= m; ++x) {
            cur.push_back({false, x, 0});
            rec();
            cur.pop_back();
          }
      };
      rec();
      break;
    }
    case Shape::Lex:
      desc << "lex a<=" << params_[0] << " |b|<=" << params_[1];
      for (std::int64_t a = 0; a <= params_[0]; ++a)
        for (std::int64_t b = -params_[1]; b <= params_[1]; ++b) {
          GroupElement p = GroupElement::lex(a, b);
          if (in_positive_cone(p)) out.push_back(p);
        }
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  elements_ = std::move(out);
  description_ = desc.str();
}

}  // namespace pgraph

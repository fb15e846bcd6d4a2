#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pgraph/catalog.hpp"

namespace pgraph {

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

DirectedGraph* hybrid_graph_slot(HybridSpec& h, const std::string& name) {
  if (name == "dgraph") return &h.d;
  if (name == "egraph0") return &h.e[0];
  if (name == "egraph1") return &h.e[1];
  if (name == "fgraph0") return &h.f[0];
  if (name == "fgraph1") return &h.f[1];
  return nullptr;
}

}  // namespace

std::vector<std::int64_t> parse_bound_numbers(std::string_view text) {
  std::vector<std::int64_t> out;
  std::string s(text);
  for (char& c : s)
    if (c == ',' || c == '(' || c == ')' || c == 'x') c = ' ';
  std::istringstream is(s);
  std::string t;
  while (is >> t) {
    auto v = to_int(t);
    if (!v) throw SpecError(0, 0, "bad bound number '" + t + "'");
    out.push_back(*v);
  }
  return out;
}

Group group_of(const GraphSpecDoc& doc) {
  if (doc.group == "nk") return Group::nk(static_cast<int>(doc.group_param));
  if (doc.group == "freemonoid") return Group::free_monoid(static_cast<int>(doc.group_param));
  if (doc.group == "freeprod-n2n") return Group::free_product_n2n();
  if (doc.group == "lex-z2") return Group::lex_z2();
  throw SpecError(0, 0, "unknown group " + doc.group);
}

DegreeBound make_bound(const Group& g, const std::vector<std::int64_t>& n) {
  auto need = [&](std::size_t k) {
    if (n.size() != k)
      throw SpecError(0, 0, "bound for " + g.name() + " takes " + std::to_string(k) + " numbers, got " +
                                std::to_string(n.size()));
  };
  for (auto x : n)
    if (x < 0) throw SpecError(0, 0, "bound numbers must be nonnegative");
  switch (g.kind()) {
    case GroupKind::Nk:
      need(static_cast<std::size_t>(g.rank()));
      return DegreeBound::box(n);
    case GroupKind::FreeMonoid:
      need(1);
      return DegreeBound::length(g, n[0]);
    case GroupKind::FreeProductN2N:
      need(2);
      return DegreeBound::blocks(n[0], n[1]);
    case GroupKind::LexZ2:
      need(2);
      return DegreeBound::lex(n[0], n[1]);
  }
  throw SpecError(0, 0, "unknown group");
}

GraphSpecDoc parse_spec_doc(std::string_view text) {
  GraphSpecDoc doc;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool in_hybrid = false;
  bool saw_group = false;
  bool saw_bound = false;
  std::set<int> attached;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    auto err = [&](std::size_t i, const std::string& what) {
      int col = i < toks.size() ? toks[i].column : static_cast<int>(line.size()) + 1;
      return SpecError(lineno, col, what);
    };
    auto arity = [&](std::size_t n) {
      if (toks.size() < n) throw err(toks.size(), "'" + toks[0].text + "' needs " + std::to_string(n - 1) + " arguments");
      if (toks.size() > n) throw err(n, "unexpected token '" + toks[n].text + "'");
    };
    const std::string& kw = toks[0].text;

    if (kw == "[hybrid]") {
      arity(1);
      if (in_hybrid) throw err(0, "duplicate [hybrid] section");
      in_hybrid = true;
      doc.hybrid = HybridSpec{};
      doc.hybrid->d = DirectedGraph{};
      continue;
    }
    if (in_hybrid) {
      try {
        if (kw == "attach0" || kw == "attach1") {
          arity(3);
          int i = kw.back() - '0';
          if (!attached.insert(i).second) throw err(0, "duplicate " + kw);
          doc.hybrid->v[static_cast<std::size_t>(i)] = toks[1].text;
          doc.hybrid->w[static_cast<std::size_t>(i)] = toks[2].text;
          continue;
        }
        DirectedGraph* slot = hybrid_graph_slot(*doc.hybrid, kw);
        if (!slot) throw err(0, "unknown hybrid keyword '" + kw + "'");
        if (toks.size() < 2) throw err(1, "'" + kw + "' needs 'default', 'vertex' or 'edge'");
        const std::string& what = toks[1].text;
        if (what == "default") {
          arity(2);
          if (kw != "dgraph") throw err(1, "only dgraph has a default");
          if (!slot->vertices.empty()) throw err(1, "dgraph already has vertices");
          *slot = default_dgraph();
        } else if (what == "vertex") {
          arity(3);
          slot->add_vertex(toks[2].text);
        } else if (what == "edge") {
          arity(5);
          slot->add_edge(toks[2].text, toks[3].text, toks[4].text);
        } else {
          throw err(1, "expected 'default', 'vertex' or 'edge', got '" + what + "'");
        }
      } catch (const SpecError& e) {
        if (e.line() > 0) throw;
        throw err(2, e.what());
      }
      continue;
    }

    if (kw == "group") {
      if (saw_group) throw err(0, "duplicate group line");
      saw_group = true;
      if (toks.size() < 2) throw err(1, "group needs an instance name");
      doc.group = toks[1].text;
      if (doc.group == "nk" || doc.group == "freemonoid") {
        arity(3);
        auto k = to_int(toks[2].text);
        if (!k || *k < 1 || *k > 16) throw err(2, "group parameter must be an integer in 1..16");
        doc.group_param = *k;
      } else if (doc.group == "freeprod-n2n" || doc.group == "lex-z2") {
        arity(2);
      } else {
        throw err(1, "unknown group '" + doc.group + "'");
      }
    } else if (kw == "bound") {
      if (saw_bound) throw err(0, "duplicate bound line");
      saw_bound = true;
      if (toks.size() < 2) throw err(1, "bound needs numbers");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        try {
          for (auto v : parse_bound_numbers(toks[i].text)) doc.bound.push_back(v);
        } catch (const SpecError& e) {
          throw err(i, e.what());
        }
      }
    } else if (kw == "vertex") {
      arity(2);
      doc.vertices.push_back(toks[1].text);
    } else if (kw == "edge") {
      arity(5);
      doc.edges.push_back({toks[1].text, toks[2].text, toks[3].text, toks[4].text, lineno});
    } else if (kw == "square") {
      arity(6);
      if (toks[3].text != "=") throw err(3, "expected '='");
      doc.squares.push_back({toks[1].text, toks[2].text, toks[4].text, toks[5].text, lineno});
    } else {
      throw err(0, "unknown keyword '" + kw + "'");
    }
  }
  if (!saw_group) throw SpecError(lineno + 1, 1, "missing group line");
  if (doc.hybrid) {
    if (doc.group != "freeprod-n2n") throw SpecError(0, 0, "[hybrid] needs group freeprod-n2n");
    if (!doc.vertices.empty() || !doc.edges.empty()) throw SpecError(0, 0, "hybrid specs declare graphs inside [hybrid]");
    if (attached.size() != 2) throw SpecError(lineno + 1, 1, "[hybrid] needs attach0 and attach1");
  } else if (doc.group == "lex-z2") {
    if (!doc.vertices.empty() || !doc.edges.empty())
      throw SpecError(0, 0, "lex-z2 specs describe the built-in two-vertex graph and take only a bound");
  } else if (doc.vertices.empty()) {
    throw SpecError(lineno + 1, 1, "empty vertex list");
  }
  return doc;
}

namespace {

int colour_of(const Group& g, const GraphSpecDoc::EdgeDecl& e) {
  const std::string& gen = e.generator;
  auto bad = [&]() {
    return SpecError(e.line, 0, "edge " + e.name + ": bad degree generator '" + gen + "' for " + g.name());
  };
  switch (g.kind()) {
    case GroupKind::Nk: {
      auto c = to_int(gen);
      if (!c || *c < 1 || *c > g.rank()) throw bad();
      return static_cast<int>(*c - 1);
    }
    case GroupKind::FreeMonoid: {
      if (gen.size() == 1 && gen[0] >= 'a' && gen[0] < 'a' + g.rank()) return gen[0] - 'a';
      auto c = to_int(gen);
      if (!c || *c < 1 || *c > g.rank()) throw bad();
      return static_cast<int>(*c - 1);
    }
    case GroupKind::FreeProductN2N:
      if (gen == "a") return 0;
      if (gen == "b") return 1;
      if (gen == "c") return 2;
      throw bad();
    case GroupKind::LexZ2:
      break;
  }
  throw bad();
}

}  // namespace

LoadedSpec parse_spec(std::string_view text, const std::optional<std::vector<std::int64_t>>& bound_override) {
  LoadedSpec out;
  out.doc = parse_spec_doc(text);
  const GraphSpecDoc& doc = out.doc;
  Group g = group_of(doc);
  std::vector<std::int64_t> numbers = bound_override ? *bound_override : doc.bound;
  std::optional<DegreeBound> bound;
  if (!numbers.empty()) bound = make_bound(g, numbers);

  if (doc.group == "lex-z2") {
    if (!bound) throw SpecError(0, 0, "lex-z2 specs need a bound A B");
    out.graph = build_sy(numbers[0], numbers[1]);
    return out;
  }
  if (doc.hybrid) {
    if (!bound) throw SpecError(0, 0, "hybrid graphs are infinite; a bound is required");
    out.hybrid = build_hybrid(*doc.hybrid, *bound);
    out.graph = out.hybrid->graph;
    return out;
  }

  std::map<std::string, VertexId> vid;
  for (const auto& v : doc.vertices)
    if (!vid.emplace(v, static_cast<VertexId>(vid.size())).second) throw SpecError(0, 0, "duplicate vertex " + v);
  std::vector<SkeletonGraph::Edge> edges;
  std::map<std::string, std::uint32_t> eid;
  for (const auto& e : doc.edges) {
    auto r = vid.find(e.range), s = vid.find(e.source);
    if (r == vid.end()) throw SpecError(e.line, 0, "edge " + e.name + " has unknown range " + e.range);
    if (s == vid.end()) throw SpecError(e.line, 0, "edge " + e.name + " has unknown source " + e.source);
    if (!eid.emplace(e.name, static_cast<std::uint32_t>(edges.size())).second)
      throw SpecError(e.line, 0, "duplicate edge " + e.name);
    edges.push_back({e.name, r->second, s->second, colour_of(g, e)});
  }
  std::vector<SkeletonGraph::Square> squares;
  for (const auto& sq : doc.squares) {
    auto find = [&](const std::string& n) {
      auto it = eid.find(n);
      if (it == eid.end()) throw SpecError(sq.line, 0, "square references unknown edge " + n);
      return it->second;
    };
    squares.push_back({find(sq.e), find(sq.f_prime), find(sq.f), find(sq.e_second)});
  }
  try {
    out.graph = SkeletonGraph::make(g, doc.vertices, std::move(edges), squares, bound);
  } catch (const SpecError& e) {
    // Point at the square line when the message names one.
    for (const auto& sq : doc.squares) {
      std::string label = sq.e + " " + sq.f_prime + " = " + sq.f + " " + sq.e_second;
      if (std::string(e.what()).find(label) != std::string::npos) throw SpecError(sq.line, 1, e.what());
    }
    throw;
  }
  return out;
}

LoadedSpec load_spec(const std::string& path, const std::optional<std::vector<std::int64_t>>& bound_override) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, 0, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), bound_override);
}

}  // namespace pgraph

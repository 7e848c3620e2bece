#include "tropref/tropmaps.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "tropref/linalg.hpp"

namespace tropref {

std::vector<int> face_indices(Face f) {
  std::vector<int> out;
  for (int j = 0; f; ++j, f >>= 1)
    if (f & 1u) out.push_back(j);
  return out;
}

Face face_of(const std::vector<int>& indices) {
  Face f = 0;
  for (int j : indices) f |= 1u << j;
  return f;
}

Face support_face(const IntVec& v) {
  Face f = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) f |= 1u << j;
  return f;
}

bool NumericalData::is_puncture(std::size_t i) const { return puncturing_rank(i) > 0; }

int NumericalData::puncturing_rank(std::size_t i) const {
  return static_cast<int>(std::count_if(markings[i].begin(), markings[i].end(),
                                        [](long a) { return a < 0; }));
}

int NumericalData::total_puncturing_rank() const {
  int total = 0;
  for (std::size_t i = 0; i < markings.size(); ++i) total += puncturing_rank(i);
  return total;
}

long NumericalData::puncturing_multiplicity(std::size_t i) const {
  long m = 0;
  for (long a : markings[i])
    if (a < 0) m -= a;
  return m;
}

NumericalReport validate_numerical_data(const NumericalData& nd) {
  NumericalReport rep;
  if (nd.k < 0 || nd.k > 30) rep.shape_errors.push_back("k out of range");
  if (static_cast<int>(nd.degrees.size()) != nd.k)
    rep.shape_errors.push_back("degrees has " + std::to_string(nd.degrees.size()) + " entries, k = " +
                               std::to_string(nd.k));
  for (std::size_t i = 0; i < nd.markings.size(); ++i)
    if (static_cast<int>(nd.markings[i].size()) != nd.k)
      rep.shape_errors.push_back("marking " + std::to_string(i + 1) + " has wrong length");
  if (!rep.shape_errors.empty()) return rep;
  for (int j = 0; j < nd.k; ++j) {
    long sum = 0;
    for (const auto& a : nd.markings) sum += a[j];
    if (sum != nd.degrees[j]) rep.unbalanced.push_back(j);
  }
  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    int r = nd.puncturing_rank(i);
    rep.ranks.push_back(r);
    (r > 0 ? rep.punctures : rep.ordinary).push_back(static_cast<int>(i));
    rep.k_p += r;
  }
  return rep;
}

std::vector<VertexClass> TargetModel::classes_on(Face f) const {
  std::vector<VertexClass> out{{IntVec(k, 0), "0"}};
  auto it = strata.find(f);
  if (it == strata.end()) return out;
  for (const auto& c : it->second) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const VertexClass& o) { return o.pairing == c.pairing; });
    if (!dup) out.push_back(c);
  }
  return out;
}

Face TropicalType::edge_face(std::size_t e) const {
  return vertices[edges[e].tail].face | vertices[edges[e].head].face;
}

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const TropicalType& t) {
  std::vector<std::vector<std::pair<int, int>>> adj(t.vertices.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    adj[t.edges[e].tail].emplace_back(t.edges[e].head, static_cast<int>(e));
    adj[t.edges[e].head].emplace_back(t.edges[e].tail, static_cast<int>(e));
  }
  return adj;
}

bool is_tree(const TropicalType& t) {
  const std::size_t v = t.vertices.size();
  if (v == 0 || t.edges.size() + 1 != v) return false;
  auto adj = adjacency(t);
  std::vector<bool> seen(v, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == v;
}

}  // namespace

std::optional<Inconsistency> check_type(const TropicalType& t, const NumericalData& nd) {
  const int k = nd.k;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    IntVec flow(k, 0);
    for (const auto& e : t.edges) {
      if (e.tail == static_cast<int>(v))
        for (int j = 0; j < k; ++j) flow[j] += e.slope[j];
      if (e.head == static_cast<int>(v))
        for (int j = 0; j < k; ++j) flow[j] -= e.slope[j];
    }
    for (std::size_t i = 0; i < t.leg_vertex.size(); ++i)
      if (t.leg_vertex[i] == static_cast<int>(v))
        for (int j = 0; j < k; ++j) flow[j] += nd.markings[i][j];
    if (flow != t.vertices[v].degree)
      return Inconsistency{static_cast<int>(v), "balancing fails at vertex " + std::to_string(v)};
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& edge = t.edges[e];
    Face ft = t.vertices[edge.tail].face;
    Face fh = t.vertices[edge.head].face;
    for (int j = 0; j < k; ++j) {
      Face bit = 1u << j;
      long m = edge.slope[j];
      if (!((ft | fh) & bit) && m != 0)
        return Inconsistency{edge.tail, "slope leaves the edge face at vertex " + std::to_string(edge.tail)};
      if ((ft & bit) && !(fh & bit) && m >= 0)
        return Inconsistency{edge.head, "edge cannot reach the face of vertex " + std::to_string(edge.head)};
      if ((fh & bit) && !(ft & bit) && m <= 0)
        return Inconsistency{edge.tail, "edge cannot reach the face of vertex " + std::to_string(edge.tail)};
    }
  }
  return std::nullopt;
}

std::variant<TropicalType, Inconsistency> slopes_from_balancing(const TropicalType& graph,
                                                                const NumericalData& nd) {
  TropicalType t = graph;
  t.k = nd.k;
  if (!is_tree(t)) return Inconsistency{-1, "underlying graph is not a tree"};
  if (t.leg_vertex.size() != nd.markings.size())
    return Inconsistency{-1, "leg count differs from the number of markings"};
  for (int v : t.leg_vertex)
    if (v < 0 || v >= static_cast<int>(t.vertices.size()))
      return Inconsistency{v, "leg attached to a missing vertex"};
  auto adj = adjacency(t);
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    // side of the tail once e is removed
    std::vector<bool> side(t.vertices.size(), false);
    std::vector<int> stack{t.edges[e].tail};
    side[t.edges[e].tail] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [w, f] : adj[u])
        if (f != static_cast<int>(e) && !side[w]) {
          side[w] = true;
          stack.push_back(w);
        }
    }
    IntVec m(nd.k, 0);
    for (std::size_t v = 0; v < t.vertices.size(); ++v)
      if (side[v])
        for (int j = 0; j < nd.k; ++j) m[j] += t.vertices[v].degree[j];
    for (std::size_t i = 0; i < t.leg_vertex.size(); ++i)
      if (side[t.leg_vertex[i]])
        for (int j = 0; j < nd.k; ++j) m[j] -= nd.markings[i][j];
    t.edges[e].slope = m;
  }
  if (auto bad = check_type(t, nd)) return *bad;
  return t;
}

namespace {

// Vertex positions as integer linear forms in the cone variables.
std::vector<std::vector<IntVec>> position_forms(const TropicalType& t,
                                                const std::vector<ConeVariable>& vars) {
  const std::size_t n = vars.size();
  std::vector<std::vector<IntVec>> pos(t.vertices.size(), std::vector<IntVec>(t.k, IntVec(n, 0)));
  std::map<int, std::size_t> root_var, edge_var;
  for (std::size_t i = 0; i < n; ++i)
    (vars[i].kind == ConeVariable::RootPosition ? root_var : edge_var)[vars[i].index] = i;
  for (auto [j, i] : root_var) pos[0][j][i] = 1;
  auto adj = adjacency(t);
  std::vector<bool> seen(t.vertices.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[u]) {
      if (seen[w]) continue;
      seen[w] = true;
      long sign = t.edges[e].tail == u ? 1 : -1;
      pos[w] = pos[u];
      for (int j = 0; j < t.k; ++j) pos[w][j][edge_var[e]] += sign * t.edges[e].slope[j];
      stack.push_back(w);
    }
  }
  return pos;
}

long dot(const IntVec& a, const IntVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TypeCone type_cone(const TropicalType& t) {
  TypeCone cone;
  for (int j : face_indices(t.vertices[0].face))
    cone.variables.push_back({ConeVariable::RootPosition, j});
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    cone.variables.push_back({ConeVariable::EdgeLength, static_cast<int>(e)});
  const std::size_t n = cone.variables.size();
  auto pos = position_forms(t, cone.variables);

  std::vector<IntVec> eqs, ineqs;
  for (std::size_t i = 0; i < n; ++i)
    if (cone.variables[i].kind == ConeVariable::EdgeLength) {
      IntVec row(n, 0);
      row[i] = 1;
      ineqs.push_back(row);
    }
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (int j = 0; j < t.k; ++j) {
      const IntVec& row = pos[v][j];
      bool zero = std::all_of(row.begin(), row.end(), [](long x) { return x == 0; });
      if (t.vertices[v].face & (1u << j)) ineqs.push_back(row);
      else if (!zero) eqs.push_back(row);
    }

  std::vector<std::vector<Rational>> basis;
  if (n > 0) basis = linalg::nullspace(linalg::from_int(eqs), n);
  const std::size_t d = basis.size();
  cone.dimension = d;
  if (d == 0) {
    cone.valid = ineqs.empty();
    cone.simplicial = cone.unimodular = true;
    return cone;
  }

  // inequalities restricted to the span: G * B
  linalg::Matrix g;
  for (const auto& row : ineqs) {
    std::vector<Rational> r(d, Rational(0));
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t i = 0; i < n; ++i) r[c] += Rational(row[i]) * basis[c][i];
    g.push_back(std::move(r));
  }
  auto to_x = [&](const std::vector<Rational>& y) {
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t i = 0; i < n; ++i) x[i] += y[c] * basis[c][i];
    return linalg::primitive_integer(x);
  };
  auto admissible = [&](const IntVec& x) {
    bool nonzero = false;
    for (const auto& row : ineqs) {
      long v = dot(row, x);
      if (v < 0) return false;
      nonzero = nonzero || v > 0;
    }
    return nonzero;
  };

  std::set<IntVec> found;
  if (d == 1) {
    for (int s : {1, -1}) {
      IntVec x = to_x({Rational(s)});
      if (admissible(x)) found.insert(x);
    }
  } else {
    const std::size_t m = g.size();
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + std::min(m, d - 1), true);
    if (m >= d - 1) {
      do {
        linalg::Matrix sub;
        for (std::size_t i = 0; i < m; ++i)
          if (pick[i]) sub.push_back(g[i]);
        auto ns = linalg::nullspace(sub, d);
        if (ns.size() != 1) continue;
        for (int s : {1, -1}) {
          std::vector<Rational> y = ns[0];
          for (auto& q : y) q *= s;
          IntVec x = to_x(y);
          if (admissible(x)) found.insert(x);
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  cone.rays.assign(found.begin(), found.end());

  IntVec sum(n, 0);
  for (const auto& r : cone.rays)
    for (std::size_t i = 0; i < n; ++i) sum[i] += r[i];
  bool spans = !cone.rays.empty() && linalg::rank(linalg::from_int(cone.rays)) == d;
  cone.valid = spans && std::all_of(ineqs.begin(), ineqs.end(),
                                    [&](const IntVec& row) { return dot(row, sum) > 0; });
  cone.simplicial = cone.rays.size() == d;
  cone.unimodular = cone.simplicial && linalg::maximal_minor_gcd(cone.rays) == 1;
  return cone;
}

std::vector<IntVec> vertex_positions(const TropicalType& t, const TypeCone& cone, const IntVec& point) {
  auto forms = position_forms(t, cone.variables);
  std::vector<IntVec> out(t.vertices.size(), IntVec(t.k, 0));
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (int j = 0; j < t.k; ++j) out[v][j] = dot(forms[v][j], point);
  return out;
}

TropicalType specialize(const TropicalType& t, const TypeCone& cone, const IntVec& point) {
  auto pos = vertex_positions(t, cone, point);
  std::vector<long> length(t.edges.size(), 0);
  for (std::size_t i = 0; i < cone.variables.size(); ++i)
    if (cone.variables[i].kind == ConeVariable::EdgeLength) length[cone.variables[i].index] = point[i];

  std::vector<int> parent(t.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (length[e] == 0) parent[find(t.edges[e].tail)] = find(t.edges[e].head);

  std::map<int, int> index;
  TropicalType out;
  out.k = t.k;
  std::vector<std::vector<std::string>> labels;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    int r = find(static_cast<int>(v));
    auto [it, fresh] = index.emplace(r, static_cast<int>(out.vertices.size()));
    if (fresh) {
      out.vertices.push_back({support_face(pos[v]), IntVec(t.k, 0), ""});
      labels.emplace_back();
    }
    auto& nv = out.vertices[it->second];
    for (int j = 0; j < t.k; ++j) nv.degree[j] += t.vertices[v].degree[j];
    if (t.vertices[v].label != "0" && !t.vertices[v].label.empty())
      labels[it->second].push_back(t.vertices[v].label);
  }
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    std::sort(labels[v].begin(), labels[v].end());
    std::string s;
    for (const auto& l : labels[v]) s += (s.empty() ? "" : "+") + l;
    out.vertices[v].label = s.empty() ? "0" : s;
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (length[e] != 0)
      out.edges.push_back({index[find(t.edges[e].tail)], index[find(t.edges[e].head)], t.edges[e].slope});
  for (int v : t.leg_vertex) out.leg_vertex.push_back(index[find(v)]);
  return out;
}

namespace {

std::pair<std::string, TropicalType> canonicalize(const TropicalType& t) {
  const std::size_t nv = t.vertices.size();
  std::vector<std::vector<long>> keys(nv);
  std::vector<int> valency(nv, 0);
  for (const auto& e : t.edges) {
    ++valency[e.tail];
    ++valency[e.head];
  }
  for (std::size_t v = 0; v < nv; ++v) {
    auto& key = keys[v];
    key.push_back(t.vertices[v].face);
    key.insert(key.end(), t.vertices[v].degree.begin(), t.vertices[v].degree.end());
    key.push_back(valency[v]);
    for (std::size_t i = 0; i < t.leg_vertex.size(); ++i)
      if (t.leg_vertex[i] == static_cast<int>(v)) key.push_back(static_cast<long>(i));
    key.push_back(-1);
  }
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });

  // groups of equal keys, permuted independently
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < nv;) {
    std::size_t j = i;
    while (j < nv && keys[order[j]] == keys[order[i]]) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<long> best;
  std::vector<int> best_arr;
  bool have = false;
  std::vector<int> arr = order;
  std::function<void(std::size_t)> search = [&](std::size_t g) {
    if (g == groups.size()) {
      std::vector<int> pos(nv);
      for (std::size_t i = 0; i < nv; ++i) pos[arr[i]] = static_cast<int>(i);
      std::vector<std::vector<long>> edges;
      for (const auto& e : t.edges) {
        int a = pos[e.tail], b = pos[e.head];
        std::vector<long> enc{std::min(a, b), std::max(a, b)};
        for (long m : e.slope) enc.push_back(a < b ? m : -m);
        edges.push_back(std::move(enc));
      }
      std::sort(edges.begin(), edges.end());
      std::vector<long> flat;
      for (const auto& e : edges) flat.insert(flat.end(), e.begin(), e.end());
      if (!have || flat < best) {
        best = std::move(flat);
        best_arr = arr;
        have = true;
      }
      return;
    }
    auto [lo, hi] = groups[g];
    std::sort(arr.begin() + lo, arr.begin() + hi);
    do {
      search(g + 1);
    } while (std::next_permutation(arr.begin() + lo, arr.begin() + hi));
  };
  search(0);

  std::ostringstream out;
  out << "k" << t.k << "|";
  for (int v : order) {
    for (long x : keys[v]) out << x << ",";
    out << ";";
  }
  out << "|";
  for (long x : best) out << x << ",";

  TropicalType form;
  form.k = t.k;
  std::vector<int> pos(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    pos[best_arr[i]] = static_cast<int>(i);
    form.vertices.push_back(t.vertices[best_arr[i]]);
  }
  for (int v : t.leg_vertex) form.leg_vertex.push_back(pos[v]);
  for (const auto& e : t.edges) {
    int a = pos[e.tail], b = pos[e.head];
    IntVec m = e.slope;
    if (a > b) {
      std::swap(a, b);
      for (auto& x : m) x = -x;
    }
    form.edges.push_back({a, b, std::move(m)});
  }
  std::sort(form.edges.begin(), form.edges.end(), [](const auto& x, const auto& y) {
    return std::tie(x.tail, x.head, x.slope) < std::tie(y.tail, y.head, y.slope);
  });
  return {out.str(), std::move(form)};
}

}  // namespace

std::string canonical_key(const TropicalType& t) { return canonicalize(t).first; }

TropicalType canonical_form(const TropicalType& t) { return canonicalize(t).second; }



namespace {

std::vector<std::vector<std::pair<int, int>>> labeled_trees(int v) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (v == 1) return {{}};
  if (v == 2) return {{{0, 1}}};
  std::vector<int> seq(v - 2, 0);
  while (true) {
    std::vector<int> deg(v, 1);
    for (int x : seq) ++deg[x];
    std::vector<std::pair<int, int>> edges;
    for (int x : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
      --deg[leaf];
      --deg[x];
    }
    int a = -1, b = -1;
    for (int i = 0; i < v; ++i)
      if (deg[i] == 1) (a < 0 ? a : b) = i;
    edges.emplace_back(a, b);
    out.push_back(std::move(edges));
    int i = v - 3;
    while (i >= 0 && seq[i] == v - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

struct Option {
  Face face;
  IntVec base;
  std::string label;
  bool zero;
};

struct Found {
  TropicalType type;
  TypeCone cone;
};

// Searches one tree shape: legs first, then vertex decorations.
void search_tree(const std::vector<std::pair<int, int>>& tree, int nv, const NumericalData& nd,
                 const TargetModel& tm, const std::vector<Option>& options, int max_nonzero,
                 const IntVec& base_total, std::map<std::string, Found>& out) {
  const int n = static_cast<int>(nd.markings.size());
  const int k = nd.k;
  std::vector<int> edge_val(nv, 0);
  for (auto [a, b] : tree) {
    ++edge_val[a];
    ++edge_val[b];
  }
  std::vector<int> legs(n, 0);
  std::vector<int> choice(nv, 0);
  while (true) {
    std::vector<int> valency = edge_val;
    for (int v : legs) ++valency[v];
    std::function<void(int, int, IntVec&)> dfs = [&](int v, int nonzero, IntVec& acc) {
      if (v == nv) {
        if (acc != base_total) return;
        TropicalType t;
        t.k = k;
        t.leg_vertex = legs;
        for (int u = 0; u < nv; ++u) {
          const auto& o = options[choice[u]];
          IntVec d = o.base;
          for (int i = 0; i < n; ++i)
            if (legs[i] == u && !tm.leg_shift.empty())
              for (int j = 0; j < k; ++j) d[j] -= tm.leg_shift[i][j];
          t.vertices.push_back({o.face, d, o.label});
        }
        for (auto [a, b] : tree) t.edges.push_back({a, b, IntVec(k, 0)});
        auto res = slopes_from_balancing(t, nd);
        if (!std::holds_alternative<TropicalType>(res)) return;
        auto typed = std::get<TropicalType>(std::move(res));
        auto [key, form] = canonicalize(typed);
        TypeCone cone = type_cone(form);
        if (!cone.valid) return;
        out.emplace(std::move(key), Found{std::move(form), std::move(cone)});
        return;
      }
      for (std::size_t c = 0; c < options.size(); ++c) {
        const auto& o = options[c];
        if (o.zero && nv > 1 && valency[v] < 3) continue;
        if (!o.zero && max_nonzero >= 0 && nonzero + 1 > max_nonzero) continue;
        choice[v] = static_cast<int>(c);
        for (int j = 0; j < k; ++j) acc[j] += o.base[j];
        dfs(v + 1, nonzero + (o.zero ? 0 : 1), acc);
        for (int j = 0; j < k; ++j) acc[j] -= o.base[j];
      }
    };
    IntVec acc(k, 0);
    dfs(0, 0, acc);

    int i = 0;
    while (i < n && legs[i] == nv - 1) legs[i++] = 0;
    if (i == n) break;
    ++legs[i];
  }
}

}  // namespace

EnumerationResult enumerate_types(const NumericalData& nd, const TargetModel& tm,
                                  const EnumerationBounds& bounds) {
  if (!validate_numerical_data(nd).ok()) throw MathError("numerical data is not balanced");
  if (tm.k != nd.k) throw MathError("target model has a different number of divisors");
  const int k = nd.k;
  const int n = static_cast<int>(nd.markings.size());
  EnumerationResult res;

  std::vector<Option> options;
  std::vector<IntVec> nonzero_classes;
  for (Face f = 0; f < (1u << k); ++f)
    for (const auto& c : tm.classes_on(f)) {
      bool zero = std::all_of(c.pairing.begin(), c.pairing.end(), [](long x) { return x == 0; });
      options.push_back({f, c.pairing, c.label, zero});
      if (!zero) nonzero_classes.push_back(c.pairing);
    }

  IntVec base_total = nd.degrees;
  if (!tm.leg_shift.empty())
    for (const auto& s : tm.leg_shift)
      for (int j = 0; j < k; ++j) base_total[j] += s[j];

  // Certificate: w in {-1,0,1}^k positive on every nonzero class.
  std::optional<long> max_nonzero;
  if (nonzero_classes.empty()) {
    max_nonzero = 0;
  } else {
    IntVec w(k, -1);
    while (true) {
      long lo = -1;
      bool positive = true;
      for (const auto& c : nonzero_classes) {
        long v = dot(w, c);
        if (v <= 0) {
          positive = false;
          break;
        }
        lo = lo < 0 ? v : std::min(lo, v);
      }
      if (positive) {
        long total = dot(w, base_total);
        long bound = total < 0 ? 0 : total / lo;
        if (!max_nonzero || bound < *max_nonzero) max_nonzero = bound;
      }
      int j = 0;
      while (j < k && w[j] == 1) w[j++] = -1;
      if (j == k) break;
      ++w[j];
    }
  }

  int vmax;
  if (max_nonzero) {
    vmax = std::max<long>(1, 2 * *max_nonzero + n - 2);
    res.complete = true;
    if (bounds.max_vertices > 0 && bounds.max_vertices < vmax) {
      vmax = bounds.max_vertices;
      res.complete = false;
      res.note = "vertex bound below the certified bound";
    }
  } else {
    vmax = bounds.max_vertices > 0 ? bounds.max_vertices : 4;
    res.complete = false;
    res.note = "no positivity certificate for the vertex classes; enumeration truncated";
  }
  res.vertex_bound = vmax;
  const int cap = max_nonzero ? static_cast<int>(*max_nonzero) : -1;

  std::map<std::string, Found> all;
  for (int nv = 1; nv <= vmax; ++nv) {
    auto trees = labeled_trees(nv);
    const int threads = std::max(1, std::min<int>(bounds.threads, static_cast<int>(trees.size())));
    std::vector<std::map<std::string, Found>> partial(threads);
    auto work = [&](int id) {
      for (std::size_t i = id; i < trees.size(); i += threads)
        search_tree(trees[i], nv, nd, tm, options, cap, base_total, partial[id]);
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int id = 0; id < threads; ++id) pool.emplace_back(work, id);
      for (auto& th : pool) th.join();
    }
    for (auto& p : partial)
      for (auto& [key, f] : p) all.emplace(key, std::move(f));
  }

  // close under specialization
  std::vector<std::string> queue;
  for (const auto& [key, f] : all) queue.push_back(key);
  for (const auto& key : queue) {
    Found f = all.at(key);
    const std::size_t r = f.cone.rays.size();
    if (r > 20) throw MathError("type cone has too many rays");
    for (std::uint32_t mask = 0; mask + 1 < (1u << r); ++mask) {
      IntVec point(f.cone.variables.size(), 0);
      for (std::size_t i = 0; i < r; ++i)
        if (mask & (1u << i))
          for (std::size_t c = 0; c < point.size(); ++c) point[c] += f.cone.rays[i][c];
      TropicalType s = specialize(f.type, f.cone, point);
      std::string sk = canonical_key(s);
      if (all.count(sk)) continue;
      TypeCone sc = type_cone(s);
      all.emplace(sk, Found{std::move(s), std::move(sc)});
    }
  }

  std::vector<std::pair<std::pair<std::size_t, std::string>, TropicalType>> sorted;
  for (auto& [key, f] : all) sorted.push_back({{f.cone.dimension, key}, std::move(f.type)});
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, t] : sorted) res.types.push_back(std::move(t));
  return res;
}

AssembledComplex assemble_complex(const std::vector<TropicalType>& types, const NumericalData& nd) {
  AssembledComplex out;
  out.types = types;
  std::map<std::string, RayId> ray_of_key;
  std::vector<Ray> rays;
  for (const auto& t : types) out.cones.push_back(type_cone(t));
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (!out.cones[i].valid) throw MathError("type " + std::to_string(i) + " has an empty cone");
    if (out.cones[i].dimension != 1) continue;
    RayId id = "R" + std::to_string(rays.size() + 1);
    ray_of_key.emplace(canonical_key(types[i]), id);
    rays.push_back({id, std::nullopt});
    out.ray_type.emplace(id, i);
  }

  std::vector<Cone> cones;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const auto& cone = out.cones[i];
    if (cone.dimension == 0) continue;
    std::vector<RayId> ids;
    for (const auto& r : cone.rays) {
      auto it = ray_of_key.find(canonical_key(specialize(types[i], cone, r)));
      if (it == ray_of_key.end())
        throw MathError("type list is not closed under specialization (type " + std::to_string(i) + ")");
      ids.push_back(it->second);
    }
    RaySet s = make_ray_set(ids);
    if (!cone.simplicial || !cone.unimodular) out.non_smooth.push_back(describe(types[i]));
    out.cone_type.emplace(s, i);
    cones.push_back({s, "T" + std::to_string(i)});
  }
  out.complex = std::make_shared<const ConeComplex>(std::move(rays), std::move(cones));

  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    for (int j = 0; j < nd.k; ++j) {
      if (nd.markings[i][j] >= 0) continue;
      Offset o{"p" + std::to_string(i + 1), {}};
      for (const auto& [id, ti] : out.ray_type) {
        const auto& t = types[ti];
        auto pos = vertex_positions(t, out.cones[ti], out.cones[ti].rays.front());
        o.f.values[id] = pos[t.leg_vertex[i]][j];
      }
      out.offsets.offsets.push_back(std::move(o));
    }
  }
  return out;
}

NumericalData positivize(const NumericalData& nd) {
  NumericalData out = nd;
  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    if (!nd.is_puncture(i)) continue;
    for (int j = 0; j < nd.k; ++j) out.degrees[j] -= nd.markings[i][j];
    std::fill(out.markings[i].begin(), out.markings[i].end(), 0);
  }
  return out;
}

TargetModel positivize_model(const NumericalData& nd, const TargetModel& tm) {
  TargetModel out = tm;
  out.leg_shift.assign(nd.markings.size(), IntVec(nd.k, 0));
  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    if (!tm.leg_shift.empty()) out.leg_shift[i] = tm.leg_shift[i];
    if (nd.is_puncture(i))
      for (int j = 0; j < nd.k; ++j) out.leg_shift[i][j] += nd.markings[i][j];
  }
  return out;
}

TropicalType positivize_type(const TropicalType& t, const NumericalData& nd) {
  TropicalType out = t;
  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    if (!nd.is_puncture(i)) continue;
    auto& d = out.vertices[t.leg_vertex[i]].degree;
    for (int j = 0; j < nd.k; ++j) d[j] -= nd.markings[i][j];
  }
  return out;
}

std::string describe(const TropicalType& t) {
  std::ostringstream out;
  auto vec = [](const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    out << (v ? " " : "") << "v" << v << "[face{";
    auto idx = face_indices(t.vertices[v].face);
    for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i] + 1;
    out << "} d=" << vec(t.vertices[v].degree);
    for (std::size_t i = 0; i < t.leg_vertex.size(); ++i)
      if (t.leg_vertex[i] == static_cast<int>(v)) out << " leg" << i + 1;
    out << "]";
  }
  for (const auto& e : t.edges) out << " v" << e.tail << "->v" << e.head << ":" << vec(e.slope);
  return out.str();
}

}  // namespace tropref

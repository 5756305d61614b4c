#include "hybrid/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hybrid/errors.hpp"

namespace hybrid {

namespace {

using nlohmann::json;

double number_or_expr(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string())
    return Expr::parse(j.get<std::string>(), 0).eval(Eigen::VectorXd(0));
  throw Error("expected a number or a constant expression string");
}

Region parse_region(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error("region bounds must be a nonempty array of [lo, hi] pairs");
  Eigen::VectorXd lo(j.size()), hi(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      throw Error("region axis bounds must be [lo, hi]");
    lo[static_cast<Eigen::Index>(i)] = number_or_expr(pair[0]);
    hi[static_cast<Eigen::Index>(i)] = number_or_expr(pair[1]);
  }
  return Region(lo, hi);
}

Point parse_point(const json& j) {
  if (!j.is_array()) throw Error("point must be an array of coordinates");
  Point p(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    p[static_cast<Eigen::Index>(i)] = number_or_expr(j[i]);
  return p;
}

std::vector<std::string> parse_exprs(const json& j) {
  if (!j.is_array()) throw Error("expected an array of expression strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error("expression must be a string");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Relation parse_relation(const json& j, const Region& target,
                        const Region& source) {
  if (j.contains("finite")) {
    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& pr : j.at("finite")) {
      if (!pr.is_array() || pr.size() != 2)
        throw Error("finite relation entries must be [[y...],[x...]] pairs");
      pairs.emplace_back(parse_point(pr[0]), parse_point(pr[1]));
    }
    return Relation::finite(target, source, std::move(pairs));
  }
  if (j.contains("guard") && j.contains("reset")) {
    Region guard = parse_region(j.at("guard"));
    SmoothMap reset =
        SmoothMap::from_strings(guard, target, parse_exprs(j.at("reset")));
    return Relation::guard_reset(target, source, std::move(guard),
                                 std::move(reset));
  }
  throw Error("relation must have either 'finite' or 'guard'+'reset'");
}

json region_to_json(const Region& r) {
  json j = json::array();
  for (int i = 0; i < r.dim(); ++i)
    j.push_back(json::array({r.lo()[i], r.hi()[i]}));
  return j;
}

json point_to_json(const Point& p) {
  json j = json::array();
  for (int i = 0; i < p.size(); ++i) j.push_back(p[i]);
  return j;
}

json exprs_to_json(const std::vector<Expr>& exprs) {
  json j = json::array();
  for (const auto& e : exprs) j.push_back(e.to_string());
  return j;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return j;
}

}  // namespace

HybridSystem parse_system(const json& j) {
  try {
    if (j.value("format", "") != kSpecFormat)
      throw Error(std::string("system spec must declare format '") +
                  kSpecFormat + "'");
    const auto& jg = j.at("graph");
    std::vector<NodeId> nodes;
    for (const auto& n : jg.at("nodes")) nodes.push_back(n.get<std::string>());
    std::vector<std::tuple<EdgeId, NodeId, NodeId>> edges;
    if (jg.contains("edges"))
      for (const auto& e : jg.at("edges")) {
        if (!e.is_array() || e.size() != 3)
          throw Error("graph edges must be [id, src, tgt] triples");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>(),
                           e[2].get<std::string>());
      }
    HybridSystem H;
    H.phase.graph = make_graph(nodes, edges);
    for (const auto& a : nodes) {
      Region r = parse_region(j.at("regions").at(a));
      auto field_exprs = parse_exprs(j.at("fields").at(a));
      H.field_of.emplace(a, VectorField::from_strings(r, field_exprs));
      H.phase.region_of.emplace(a, std::move(r));
    }
    for (const auto& [e, s, t] : edges) {
      H.phase.relation_of.emplace(
          e, parse_relation(j.at("relations").at(e), H.phase.region(t),
                            H.phase.region(s)));
    }
    return H;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed system spec: ") + e.what());
  }
}

HybridSystem load_system(const std::filesystem::path& path) {
  return parse_system(load_json(path));
}

json system_to_json(const HybridSystem& H) {
  json j;
  j["format"] = kSpecFormat;
  j["graph"]["nodes"] = H.phase.graph.nodes();
  json edges = json::array();
  for (const auto& e : H.phase.graph.edges())
    edges.push_back(
        json::array({e, H.phase.graph.src(e), H.phase.graph.tgt(e)}));
  j["graph"]["edges"] = edges;
  for (const auto& a : H.phase.graph.nodes()) {
    j["regions"][a] = region_to_json(H.phase.region(a));
    j["fields"][a] = exprs_to_json(H.field(a).components());
  }
  for (const auto& e : H.phase.graph.edges()) {
    const Relation& r = H.phase.relation(e);
    json jr;
    switch (r.body()) {
      case Relation::Body::Finite: {
        json pairs = json::array();
        for (const auto& [y, x] : r.pairs())
          pairs.push_back(json::array({point_to_json(y), point_to_json(x)}));
        jr["finite"] = pairs;
        break;
      }
      case Relation::Body::GuardReset:
        jr["guard"] = region_to_json(r.guard_box());
        jr["reset"] = exprs_to_json(r.reset().components());
        break;
      case Relation::Body::Predicate:
        throw Error("predicate relations are not serializable");
    }
    j["relations"][e] = jr;
  }
  return j;
}

HDSMorphism load_morphism(const std::filesystem::path& path) {
  json j = load_json(path);
  try {
    if (j.value("format", "") != kSpecFormat)
      throw Error(std::string("morphism spec must declare format '") +
                  kSpecFormat + "'");
    auto base = path.parent_path();
    HDSMorphism m{load_system(base / j.at("source").get<std::string>()),
                  load_system(base / j.at("target").get<std::string>()),
                  {},
                  {}};
    m.phi.dom = m.source_sys.phase.graph;
    m.phi.cod = m.target_sys.phase.graph;
    for (const auto& [a, b] : j.at("node_map").items())
      m.phi.node_map[a] = b.get<std::string>();
    for (const auto& [e, f] : j.at("edge_map").items())
      m.phi.edge_map[e] = f.get<std::string>();
    for (const auto& [a, exprs] : j.at("alpha").items()) {
      if (!m.source_sys.phase.graph.has_node(a))
        throw Error("alpha names unknown source node '" + a + "'");
      m.alpha_of.emplace(
          a, SmoothMap::from_strings(
                 m.source_sys.phase.region(a),
                 m.target_sys.phase.region(m.phi.node(a)),
                 parse_exprs(exprs)));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed morphism spec: ") + e.what());
  }
}

bool systems_equal(const HybridSystem& a, const HybridSystem& b) {
  try {
    return system_to_json(a) == system_to_json(b);
  } catch (const Error&) {
    return false;
  }
}

Execution read_trajectory_csv(std::istream& is, const HybridSystem& H,
                              double tol) {
  std::string line;
  if (!std::getline(is, line)) throw Error("empty trajectory CSV");
  // header: t,segment,node,x1..xn
  int dim = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 2;
  if (dim < 1) throw Error("trajectory CSV header has no coordinate columns");

  struct Row {
    double t;
    int segment;
    NodeId node;
    Point x;
  };
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Row r;
    if (!std::getline(ss, cell, ',')) throw Error("short CSV row");
    r.t = std::stod(cell);
    if (!std::getline(ss, cell, ',')) throw Error("short CSV row");
    r.segment = std::stoi(cell);
    if (!std::getline(ss, r.node, ',')) throw Error("short CSV row");
    r.x = Point(dim);
    for (int i = 0; i < dim; ++i) {
      if (!std::getline(ss, cell, ',')) throw Error("short CSV row");
      r.x[i] = std::stod(cell);
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw Error("trajectory CSV has no data rows");

  Execution E;
  int current = -1;
  for (const auto& r : rows) {
    if (!H.phase.graph.has_node(r.node))
      throw SourceMismatch("CSV names unknown node '" + r.node + "'");
    const Region& region = H.phase.region(r.node);
    Point x = r.x.head(region.dim());
    if (r.segment != current) {
      if (r.segment != current + 1)
        throw Error("CSV segments are not consecutive");
      current = r.segment;
      E.phi0.push_back(r.node);
      E.curves.push_back(Curve{r.t, r.t, {}, region});
    }
    auto& c = E.curves.back();
    c.t1 = r.t;
    c.samples.emplace_back(r.t, x);
  }

  // Infer the edge sequence from consecutive segment endpoints.
  for (std::size_t i = 0; i + 1 < E.curves.size(); ++i) {
    const Point& x_end = E.curves[i].back();
    const Point& y_start = E.curves[i + 1].front();
    auto out = H.phase.graph.out_edges(E.phi0[i]);
    std::sort(out.begin(), out.end());
    bool found = false;
    for (const auto& e : out) {
      if (H.phase.graph.tgt(e) != E.phi0[i + 1]) continue;
      if (H.phase.relation(e).member(y_start, x_end, tol)) {
        E.phi1.push_back(e);
        found = true;
        break;
      }
    }
    if (!found)
      throw SourceMismatch("no edge admits the jump after segment " +
                           std::to_string(i));
  }

  std::vector<double> times;
  for (std::size_t i = 0; i < E.curves.size(); ++i)
    times.push_back(E.curves[i].t1);
  E.time_sys = make_time_system(E.curves.front().t0, times);
  return E;
}

}  // namespace hybrid

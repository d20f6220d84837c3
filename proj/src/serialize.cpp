// SPDX-License-Identifier: Apache-2.0
#include "stit/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "stit/errors.hpp"

namespace stit {

namespace {

void dump_string(const std::string& s, std::string& out) {
  // nlohmann's escaping is already deterministic.
  out += Json(s).dump();
}

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ',';
        first = false;
        dump_string(it.key(), out);
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      return;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + what);
    }
  }
}

Vec vec_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + " must be a number array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(std::string(what) + " must contain numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

template <class F>
auto wrap(F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const Json& j) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_dump(j))));
  return buf;
}

Json to_json(const Polytope& p) {
  if (p.is_box()) return {{"kind", "box"}, {"lo", vec_json(p.box().lo())}, {"hi", vec_json(p.box().hi())}};
  Json v = Json::array();
  for (const auto& q : p.polygon().vertices()) v.push_back({q.x, q.y});
  return {{"kind", "polygon"}, {"vertices", v}};
}

Json to_json(const PointSet& p) {
  Json v = Json::array();
  for (const auto& x : p.points) v.push_back(vec_json(x));
  return {{"points", v}};
}

Json to_json(const Hyperplane& h) {
  return {{"u", vec_json(h.normal().components())}, {"d", h.offset()}};
}

Json to_json(const DrivingMeasure& m) {
  Json dir;
  if (m.is_isotropic()) {
    dir = {{"kind", "isotropic2d"}};
  } else {
    Json axes = Json::array();
    for (const auto& a : m.axes()) axes.push_back({{"u", vec_json(a.u.components())}, {"w", a.w}});
    dir = {{"kind", "discrete"}, {"axes", axes}};
  }
  return {{"gamma", m.gamma()}, {"directional", dir}};
}

Json to_json(const CellTree& tree) {
  Json nodes = Json::array();
  for (const auto& n : tree.nodes()) {
    Json j{{"id", n.id},
           {"birth", n.birth},
           {"death", n.death ? Json(*n.death) : Json(nullptr)},
           {"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
           {"hyperplane", n.split ? to_json(*n.split) : Json(nullptr)},
           {"rejected", n.rejected.size()},
           {"polytope", to_json(n.polytope)}};
    nodes.push_back(std::move(j));
  }
  Json jumps = Json::array();
  for (double t : tree.jump_times()) jumps.push_back(t);
  return {{"window", to_json(tree.window())},
          {"measure", to_json(tree.measure())},
          {"method", tree.method() == Method::Rejection ? "rejection" : "direct"},
          {"current_time", tree.current_time()},
          {"nodes", nodes},
          {"jump_times", jumps}};
}

Json to_json(const Tessellation& t) {
  Json cells = Json::array();
  for (const auto& c : t.cells) cells.push_back(to_json(c));
  return {{"window", to_json(t.window)}, {"cells", cells}};
}

Polytope polytope_from_json(const Json& j) {
  return wrap([&]() -> Polytope {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("window needs a 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "box") {
      reject_unknown(j, {"kind", "lo", "hi"}, "box");
      return Box(vec_from_json(j.at("lo"), "lo"), vec_from_json(j.at("hi"), "hi"));
    }
    if (kind == "polygon") {
      reject_unknown(j, {"kind", "vertices"}, "polygon");
      std::vector<Point2> v;
      for (const auto& p : j.at("vertices")) {
        const auto xy = vec_from_json(p, "vertex");
        if (xy.size() != 2) throw ConfigError("polygon vertices must be [x, y]");
        v.push_back({xy[0], xy[1]});
      }
      return Polygon(std::move(v));
    }
    throw ConfigError("unknown window kind '" + kind + "'");
  });
}

DrivingMeasure measure_from_json(const Json& j) {
  return wrap([&]() -> DrivingMeasure {
    reject_unknown(j, {"gamma", "directional", "g"}, "measure");
    if (j.contains("g")) {
      if (j.contains("gamma") || j.contains("directional")) {
        throw ConfigError("'g' excludes 'gamma' and 'directional'");
      }
      return DrivingMeasure::axis_orthogonal(vec_from_json(j.at("g"), "g"));
    }
    const double gamma = j.at("gamma").get<double>();
    const auto& d = j.at("directional");
    const auto kind = d.at("kind").get<std::string>();
    if (kind == "isotropic2d") {
      reject_unknown(d, {"kind"}, "directional");
      return DrivingMeasure::isotropic2d(gamma);
    }
    if (kind == "discrete") {
      reject_unknown(d, {"kind", "axes"}, "directional");
      std::vector<Axis> axes;
      for (const auto& a : d.at("axes")) {
        reject_unknown(a, {"u", "w"}, "axis");
        axes.push_back({Direction::normalized(vec_from_json(a.at("u"), "u")), a.at("w").get<double>()});
      }
      return DrivingMeasure::discrete(gamma, std::move(axes));
    }
    throw ConfigError("unknown directional kind '" + kind + "'");
  });
}

std::string to_svg(const Tessellation& t) {
  if (t.window.dim() != 2) throw RegimeMismatch("SVG rendering needs a 2-D tessellation");
  constexpr double kPx = 100.0;
  const auto win = as_polygon(t.window);
  double xmin = win.vertices().front().x, xmax = xmin;
  double ymin = win.vertices().front().y, ymax = ymin;
  for (const auto& p : win.vertices()) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const auto px = [&](double x) { return format_double((x - xmin) * kPx + 1.0); };
  const auto py = [&](double y) { return format_double((ymax - y) * kPx + 1.0); };
  auto points = [&](const Polygon& poly) {
    std::string s;
    for (const auto& p : poly.vertices()) {
      if (!s.empty()) s += ' ';
      s += px(p.x) + "," + py(p.y);
    }
    return s;
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double((xmax - xmin) * kPx + 2.0)
     << "\" height=\"" << format_double((ymax - ymin) * kPx + 2.0) << "\">\n";
  if (t.window.is_box()) {
    os << "<rect class=\"window\" x=\"1\" y=\"1\" width=\"" << format_double((xmax - xmin) * kPx)
       << "\" height=\"" << format_double((ymax - ymin) * kPx)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  } else {
    os << "<polygon class=\"window\" points=\"" << points(win)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  for (const auto& c : t.cells) {
    os << "<polygon class=\"cell\" points=\"" << points(as_polygon(c))
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace stit

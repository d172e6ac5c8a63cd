#include "cislimit/io.hpp"

#include <fstream>
#include <sstream>

namespace cislimit {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<std::string> id_list(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  const auto& a = array(j, path);
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.push_back(str(a[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

PointSet point_set(const FinSpace& x, const Json& j, const std::string& path) {
  PointSet s = x.none();
  const auto ids = id_list(j, path);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto p = x.find(ids[k]);
    if (!p) fail(path + "[" + std::to_string(k) + "]", "unknown point '" + ids[k] + "'");
    s.set(*p);
  }
  return s;
}

Json ids_of(const FinSpace& x, const PointSet& s) {
  Json a = Json::array();
  for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) a.push_back(x.id(p));
  return a;
}

// {id: id} into a point table over `source` (no_point where absent).
std::vector<std::size_t> table_from_json(const Json& j, const FinSpace& source,
                                         const FinSpace& target, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object mapping ids to ids");
  std::vector<std::size_t> t(source.size(), no_point);
  for (const auto& [k, v] : j.items()) {
    const auto sub = path + "." + k;
    const auto from = source.find(k);
    if (!from) fail(sub, "unknown source point '" + k + "'");
    const auto to_id = str(v, sub);
    const auto to = target.find(to_id);
    if (!to) fail(sub, "unknown target point '" + to_id + "'");
    t[*from] = *to;
  }
  return t;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    for (std::size_t k = 0; k + 1 < upto; ++k) {
      if (text[k] == '\n') ++line;
    }
    throw InputError(origin + ":" + std::to_string(line) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Json space_to_json(const FinSpace& x) {
  Json j;
  j["points"] = x.ids();
  Json up = Json::object();
  for (std::size_t p = 0; p < x.size(); ++p) up[x.id(p)] = ids_of(x, x.min_open(p));
  j["min_open"] = up;
  return j;
}

SpacePtr space_from_json(const Json& j, const std::string& path) {
  const auto ids = id_list(field(j, "points", path), path + ".points");
  const auto& up = field(j, "min_open", path);
  if (!up.is_object()) fail(path + ".min_open", "expected an object");
  std::map<std::string, std::vector<std::string>> m;
  for (const auto& [k, v] : up.items()) m[k] = id_list(v, path + ".min_open." + k);
  try {
    return make_space(FinSpace::from_ids(ids, m));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Json map_to_json(const FinMap& m) {
  Json j = Json::object();
  for (std::size_t x = 0; x < m.source().size(); ++x) j[m.source().id(x)] = m.target().id(m(x));
  return j;
}

FinMap map_from_json(const Json& j, const SpacePtr& source, const SpacePtr& target,
                     const std::string& path) {
  auto t = table_from_json(j, *source, *target, path);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x] == no_point) fail(path, "no image for point '" + source->id(x) + "'");
  }
  return FinMap(source, target, std::move(t));
}

Json cis_to_json(const Cis& c) {
  Json stages = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& x = c.space(i);
    Json s;
    s["space"] = space_to_json(x);
    s["y"] = ids_of(x, c.y(i));
    if (i < c.last()) {
      Json f = Json::object();
      for (std::size_t p = 0; p < x.size(); ++p) {
        const auto q = c.step(i, p);
        if (q != no_point) f[x.id(p)] = c.space(i + 1).id(q);
      }
      s["f"] = f;
    }
    stages.push_back(std::move(s));
  }
  Json tail;
  if (c.stationary()) {
    tail["kind"] = "stationary";
    tail["n0"] = c.tail().n0;
  } else {
    tail["kind"] = "cutoff";
  }
  return Json{{"stages", stages}, {"tail", tail}};
}

Cis cis_from_json(const Json& j, const std::string& path) {
  const auto& st = array(field(j, "stages", path), path + ".stages");
  if (st.empty()) fail(path + ".stages", "a system needs at least one stage");
  std::vector<SpacePtr> spaces;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto sp = path + ".stages[" + std::to_string(i) + "]";
    spaces.push_back(space_from_json(field(st[i], "space", sp), sp + ".space"));
  }
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto sp = path + ".stages[" + std::to_string(i) + "]";
    auto y = point_set(*spaces[i], field(st[i], "y", sp), sp + ".y");
    const bool last = i + 1 == st.size();
    const auto f = st[i].find("f");
    if (last) {
      if (f != st[i].end() && !(f->is_object() && f->empty())) {
        fail(sp + ".f", "the last stage carries no map");
      }
      stages.push_back(make_stage(spaces[i], std::move(y), nullptr));
      continue;
    }
    if (f == st[i].end()) fail(sp, "missing field 'f'");
    const auto t = table_from_json(*f, *spaces[i], *spaces[i + 1], sp + ".f");
    for (std::size_t p = 0; p < t.size(); ++p) {
      if ((t[p] != no_point) != y.test(p)) {
        fail(sp + ".f", "f must be defined exactly on y (point '" + spaces[i]->id(p) + "')");
      }
    }
    stages.push_back(make_stage(spaces[i], std::move(y), spaces[i + 1], t));
  }
  const auto& tail = field(j, "tail", path);
  const auto kind = str(field(tail, "kind", path + ".tail"), path + ".tail.kind");
  Tail t;
  if (kind == "cutoff") {
    t = Tail::cutoff();
  } else if (kind == "stationary") {
    const auto& n0 = field(tail, "n0", path + ".tail");
    if (!n0.is_number_unsigned()) fail(path + ".tail.n0", "expected a stage index");
    t = Tail::stationary(n0.get<std::size_t>());
  } else {
    fail(path + ".tail.kind", "expected 'cutoff' or 'stationary'");
  }
  try {
    return Cis(std::move(stages), t);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Json limit_to_json(const LimitSpace& ls) {
  Json phis = Json::array();
  for (const auto& phi : ls.phis) phis.push_back(map_to_json(phi));
  return Json{{"space", space_to_json(*ls.x)}, {"phis", phis}};
}

LimitSpace limit_from_json(const Json& j, const Cis& c, const std::string& path) {
  LimitSpace ls{space_from_json(field(j, "space", path), path + ".space"), {}};
  const auto& phis = array(field(j, "phis", path), path + ".phis");
  if (phis.size() != c.size()) {
    fail(path + ".phis", "expected " + std::to_string(c.size()) + " maps, got " +
                             std::to_string(phis.size()));
  }
  for (std::size_t i = 0; i < phis.size(); ++i) {
    ls.phis.push_back(map_from_json(phis[i], c.space_ptr(i), ls.x,
                                    path + ".phis[" + std::to_string(i) + "]"));
  }
  return ls;
}

namespace {

Json h_to_json(const CisMorphism& m) {
  Json h = Json::array();
  for (const auto& hi : m.h) h.push_back(map_to_json(hi));
  return h;
}

std::vector<FinMap> h_from_json(const Json& j, const Cis& s, const Cis& t,
                                const std::string& path) {
  const auto& a = array(j, path);
  if (a.size() != s.size()) {
    fail(path, "expected " + std::to_string(s.size()) + " maps, got " +
                   std::to_string(a.size()));
  }
  if (t.size() != s.size()) fail(path, "source and target have different stage counts");
  std::vector<FinMap> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(map_from_json(a[i], s.space_ptr(i), t.space_ptr(i),
                                path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Json morphism_to_json(const CisMorphism& m) {
  return Json{{"source", cis_to_json(*m.source)},
              {"target", cis_to_json(*m.target)},
              {"h", h_to_json(m)}};
}

CisMorphism morphism_from_json(const Json& j, const std::string& path) {
  auto s = std::make_shared<const Cis>(cis_from_json(field(j, "source", path), path + ".source"));
  auto t = std::make_shared<const Cis>(cis_from_json(field(j, "target", path), path + ".target"));
  auto h = h_from_json(field(j, "h", path), *s, *t, path + ".h");
  return CisMorphism{s, t, std::move(h)};
}

Json diagram_to_json(const CisDiagram& d) {
  Json objects = Json::array();
  for (const auto& o : d.objects) objects.push_back(cis_to_json(*o));
  Json arrows = Json::array();
  for (const auto& a : d.arrows) arrows.push_back(Json{{"h", h_to_json(a)}});
  return Json{{"objects", objects}, {"arrows", arrows}};
}

CisDiagram diagram_from_json(const Json& j, const std::string& path) {
  CisDiagram d;
  const auto& objects = array(field(j, "objects", path), path + ".objects");
  for (std::size_t n = 0; n < objects.size(); ++n) {
    d.objects.push_back(std::make_shared<const Cis>(
        cis_from_json(objects[n], path + ".objects[" + std::to_string(n) + "]")));
  }
  const auto& arrows = array(field(j, "arrows", path), path + ".arrows");
  if (arrows.size() + 1 != d.objects.size()) {
    fail(path + ".arrows", "expected one arrow per consecutive pair of objects");
  }
  for (std::size_t n = 0; n < arrows.size(); ++n) {
    const auto sp = path + ".arrows[" + std::to_string(n) + "]";
    auto h = h_from_json(field(arrows[n], "h", sp), *d.objects[n], *d.objects[n + 1],
                         sp + ".h");
    d.arrows.push_back(CisMorphism{d.objects[n], d.objects[n + 1], std::move(h)});
  }
  return d;
}

Json matrix_to_json(const Gf2Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

Gf2Matrix matrix_from_json(const Json& j, std::size_t cols, const std::string& path) {
  const auto& a = array(j, path);
  std::vector<std::vector<int>> rows;
  for (std::size_t r = 0; r < a.size(); ++r) {
    const auto rp = path + "[" + std::to_string(r) + "]";
    std::vector<int> row;
    for (std::size_t c = 0; c < array(a[r], rp).size(); ++c) {
      const auto& v = a[r][c];
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        fail(rp + "[" + std::to_string(c) + "]", "expected 0 or 1");
      }
      row.push_back(v.get<int>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return Gf2Matrix::from_rows(rows, cols);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::string to_dot(const FinSpace& x, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::size_t p = 0; p < x.size(); ++p) os << "  \"" << x.id(p) << "\";\n";
  for (std::size_t t = 0; t < x.size(); ++t) {
    const auto& ut = x.min_open(t);
    for (auto y = ut.find_first(); y != PointSet::npos; y = ut.find_next(y)) {
      if (y == t) continue;
      bool covered = false;
      for (auto z = ut.find_first(); z != PointSet::npos && !covered; z = ut.find_next(z)) {
        covered = x.min_open(z).test(y) && x.min_open(z) != ut &&
                  x.min_open(z) != x.min_open(y);
      }
      if (!covered) os << "  \"" << x.id(y) << "\" -> \"" << x.id(t) << "\";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace cislimit

#include "lcgeom/presets.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lcg {

namespace {

struct PresetEntry {
  const char* name;
  Body (*make)();
};

const PresetEntry kPresets[] = {
    {"interval", [] { return Body::box(1, Vec(-1.0), Vec(1.0)); }},
    {"interval01", [] { return Body::box(1, Vec(0.0), Vec(1.0)); }},
    {"square", [] { return Body::box(2, Vec(-1, -1), Vec(1, 1)); }},
    {"square01", [] { return Body::box(2, Vec(0, 0), Vec(1, 1)); }},
    {"triangle", [] { return Body::simplex(2, {Vec(0, 0), Vec(1, 0), Vec(0, 1)}); }},
    {"simplex2",
     [] { return Body::simplex(2, {Vec(-0.25, -0.25), Vec(0.75, -0.25), Vec(-0.25, 0.75)}); }},
    {"disk", [] { return Body::ball(2, Vec(), 1.0); }},
    {"cube", [] { return Body::box(3, Vec(-1, -1, -1), Vec(1, 1, 1)); }},
    {"ball3", [] { return Body::ball(3, Vec(), 1.0); }},
    {"simplex3",
     [] {
       return Body::simplex(3, {Vec(-0.25, -0.25, -0.25), Vec(0.75, -0.25, -0.25),
                                Vec(-0.25, 0.75, -0.25), Vec(-0.25, -0.25, 0.75)});
     }},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Whitespace- or comma-separated numbers.
std::vector<double> numbers(std::string text, const std::string& key) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "' in " + key);
    out.push_back(v);
  }
  return out;
}

Vec to_vec(const std::vector<double>& xs, int dim, const std::string& key) {
  if (static_cast<int>(xs.size()) != dim)
    throw std::invalid_argument(key + " needs " + std::to_string(dim) + " coordinates");
  Vec v;
  for (int k = 0; k < dim; ++k) v[k] = xs[k];
  return v;
}

}  // namespace

Body preset_body(std::string_view name) {
  for (const PresetEntry& p : kPresets)
    if (name == p.name) return p.make();
  throw std::invalid_argument("unknown body preset '" + std::string(name) + "'");
}

bool is_preset(std::string_view name) {
  return std::any_of(std::begin(kPresets), std::end(kPresets),
                     [&](const PresetEntry& p) { return name == p.name; });
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const PresetEntry& p : kPresets) out.emplace_back(p.name);
  return out;
}

const std::string* ConfigSection::find(std::string_view key) const {
  const std::string* hit = nullptr;
  for (const auto& [k, v] : entries)
    if (k == key) hit = &v;
  return hit;
}

std::vector<std::string> ConfigSection::all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries)
    if (k == key) out.push_back(v);
  return out;
}

std::vector<ConfigSection> parse_config(std::istream& in) {
  std::vector<ConfigSection> sections(1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed section header");
      sections.push_back(ConfigSection{trim(std::string_view(t).substr(1, t.size() - 2)), {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    sections.back().entries.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  if (sections.front().entries.empty()) sections.erase(sections.begin());
  return sections;
}

Body body_from_section(const ConfigSection& section) {
  const std::string* kind = section.find("kind");
  const std::string* dim_text = section.find("dim");
  if (!kind || !dim_text) throw std::invalid_argument("body '" + section.name + "' needs kind and dim");
  const std::vector<double> dv = numbers(*dim_text, "dim");
  if (dv.size() != 1 || dv[0] != static_cast<int>(dv[0]))
    throw std::invalid_argument("dim must be an integer");
  const int dim = static_cast<int>(dv[0]);
  if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2 or 3");

  if (*kind == "vpolytope" || *kind == "simplex") {
    std::vector<Vec> verts;
    for (const std::string& row : section.all("vertex")) verts.push_back(to_vec(numbers(row, "vertex"), dim, "vertex"));
    return *kind == "simplex" ? Body::simplex(dim, std::move(verts))
                              : Body::vpolytope(dim, std::move(verts));
  }
  if (*kind == "hpolytope") {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (const std::string& row : section.all("halfspace")) {
      const auto slash = row.find('/');
      if (slash == std::string::npos) throw std::invalid_argument("halfspace rows are 'n1 .. nd / b'");
      normals.push_back(to_vec(numbers(row.substr(0, slash), "halfspace"), dim, "halfspace normal"));
      const std::vector<double> b = numbers(row.substr(slash + 1), "halfspace");
      if (b.size() != 1) throw std::invalid_argument("halfspace needs one offset");
      offsets.push_back(b[0]);
    }
    return Body::hpolytope(dim, std::move(normals), std::move(offsets));
  }
  Vec center;
  if (const std::string* c = section.find("center")) center = to_vec(numbers(*c, "center"), dim, "center");
  if (*kind == "ball") {
    const std::string* r = section.find("radius");
    const std::vector<double> rv = r ? numbers(*r, "radius") : std::vector<double>{1.0};
    if (rv.size() != 1) throw std::invalid_argument("radius needs one value");
    return Body::ball(dim, center, rv[0]);
  }
  if (*kind == "ellipsoid") {
    const std::vector<std::string> rows = section.all("shape");
    if (static_cast<int>(rows.size()) != dim) throw std::invalid_argument("ellipsoid needs dim shape rows");
    Mat3 m;
    for (int i = 0; i < dim; ++i) m.rows[i] = to_vec(numbers(rows[i], "shape"), dim, "shape row");
    return Body::ellipsoid(dim, center, m);
  }
  throw std::invalid_argument("unknown body kind '" + *kind + "'");
}

std::map<std::string, Body> load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open body file '" + path + "'");
  std::map<std::string, Body> out;
  for (const ConfigSection& s : parse_config(in)) {
    if (s.name.empty()) continue;
    out.emplace(s.name, body_from_section(s));
  }
  if (out.empty()) throw std::invalid_argument("body file '" + path + "' defines no bodies");
  return out;
}

}  // namespace lcg

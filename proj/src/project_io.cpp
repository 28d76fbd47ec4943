#include "grkhs/project_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace grkhs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw StructuralError("project file: " + path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
  return {as_double(j[0], path + "/0"), as_double(j[1], path + "/1")};
}

Matrix as_matrix(const json& j, int rows, int cols, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (static_cast<int>(j.size()) != rows)
    fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[i];
    const std::string row_path = path + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(row_path, "expected a row of length " + std::to_string(cols));
    for (int k = 0; k < cols; ++k)
      m(i, k) = as_complex(row[k], row_path + "/" + std::to_string(k));
  }
  return m;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

GroupoidData parse_groupoid(const json& j, const std::string& path) {
  GroupoidData data;
  const json& bases = require(j, "base_points", path);
  if (!bases.is_array()) fail(path + "/base_points", "expected an array");
  for (const auto& b : bases) data.base_points.push_back(as_string(b, path + "/base_points"));

  const json& arrows = require(j, "arrows", path);
  if (!arrows.is_array()) fail(path + "/arrows", "expected an array");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string apath = path + "/arrows/" + std::to_string(i);
    data.arrows.push_back({as_string(require(arrows[i], "id", apath), apath + "/id"),
                           as_string(require(arrows[i], "s", apath), apath + "/s"),
                           as_string(require(arrows[i], "r", apath), apath + "/r")});
  }

  const json& units = require(j, "units", path);
  if (!units.is_object()) fail(path + "/units", "expected an object");
  for (const auto& [base, arrow] : units.items())
    data.units.emplace(base, as_string(arrow, path + "/units/" + base));

  const json& inverse = require(j, "inverse", path);
  if (!inverse.is_object()) fail(path + "/inverse", "expected an object");
  for (const auto& [arrow, inv] : inverse.items())
    data.inverse.emplace(arrow, as_string(inv, path + "/inverse/" + arrow));

  const json& products = require(j, "product", path);
  if (!products.is_array()) fail(path + "/product", "expected an array");
  for (std::size_t i = 0; i < products.size(); ++i) {
    const std::string ppath = path + "/product/" + std::to_string(i);
    const json& entry = products[i];
    if (!entry.is_array() || entry.size() != 3) fail(ppath, "expected [g1, g2, g1g2]");
    data.products.push_back({as_string(entry[0], ppath + "/0"), as_string(entry[1], ppath + "/1"),
                             as_string(entry[2], ppath + "/2")});
  }
  return data;
}

json groupoid_to_json(const FiniteGroupoid& g) {
  GroupoidData data = g.to_data();
  json out;
  out["base_points"] = data.base_points;
  json arrows = json::array();
  for (const auto& a : data.arrows)
    arrows.push_back(json{{"id", a.id}, {"s", a.source}, {"r", a.range}});
  out["arrows"] = std::move(arrows);
  json units = json::object();
  for (const auto& [b, e] : data.units) units[b] = e;
  out["units"] = std::move(units);
  json inverse = json::object();
  for (const auto& [a, inv] : data.inverse) inverse[a] = inv;
  out["inverse"] = std::move(inverse);
  json products = json::array();
  for (const auto& p : data.products) products.push_back(json::array({p.left, p.right, p.result}));
  out["product"] = std::move(products);
  return out;
}

// Canonical text: sorted object keys (nlohmann's default map order), arrays
// in declaration order, floats printed with %.17g.
void write_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        write_canonical(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        write_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw StructuralError("project file: non-finite number");
      if (v == 0.0) v = 0.0;  // drop the sign of negative zero
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

const UnitaryRepresentation* Project::find_representation(const std::string& id) const {
  for (const auto& r : representations)
    if (r.id == id) return &r.value;
  return nullptr;
}
const VectorField* Project::find_vector_field(const std::string& id) const {
  for (const auto& f : vector_fields)
    if (f.id == id) return &f.value;
  return nullptr;
}
const HaarSystem* Project::find_haar(const std::string& id) const {
  for (const auto& h : haar_systems)
    if (h.id == id) return &h.value;
  return nullptr;
}
const GroupoidKernel* Project::find_kernel(const std::string& id) const {
  for (const auto& k : kernels)
    if (k.id == id) return &k.value;
  return nullptr;
}

Project load_project_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("project file: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("/", "expected a JSON object");

  Project project;
  project.format_version = as_int(require(j, "format_version", ""), "/format_version");
  if (project.format_version != 1)
    fail("/format_version", "unsupported version " + std::to_string(project.format_version));

  if (j.contains("groupoid")) {
    GroupoidData data = parse_groupoid(j["groupoid"], "/groupoid");
    project.groupoid = std::make_shared<FiniteGroupoid>(FiniteGroupoid::from_data(data));
  }

  auto need_groupoid = [&](const char* section) -> const FiniteGroupoid& {
    if (!project.groupoid)
      fail(std::string("/") + section, "section requires a groupoid section");
    return *project.groupoid;
  };

  if (j.contains("representations")) {
    const json& reps = j["representations"];
    if (!reps.is_array()) fail("/representations", "expected an array");
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const std::string rpath = "/representations/" + std::to_string(i);
      const FiniteGroupoid& g = need_groupoid("representations");
      const json& rj = reps[i];
      std::string id = as_string(require(rj, "id", rpath), rpath + "/id");

      HilbertFamily spaces;
      spaces.dims.assign(g.base_count(), -1);
      const json& dims = require(rj, "dims", rpath);
      if (!dims.is_object()) fail(rpath + "/dims", "expected an object");
      for (const auto& [base, n] : dims.items()) {
        int b;
        try {
          b = g.base_index(base);
        } catch (const LookupError&) {
          fail(rpath + "/dims/" + base, "unknown base point");
        }
        spaces.dims[b] = as_int(n, rpath + "/dims/" + base);
      }
      for (int b = 0; b < g.base_count(); ++b)
        if (spaces.dims[b] < 0)
          fail(rpath + "/dims", "no dimension for base point '" + g.base_name(b) + "'");

      const json& mats = require(rj, "matrices", rpath);
      if (!mats.is_object()) fail(rpath + "/matrices", "expected an object");
      std::vector<Matrix> matrices(g.arrow_count());
      std::vector<bool> have(g.arrow_count(), false);
      for (const auto& [arrow, mj] : mats.items()) {
        int a;
        try {
          a = g.arrow_index(arrow);
        } catch (const LookupError&) {
          fail(rpath + "/matrices/" + arrow, "unknown arrow");
        }
        matrices[a] = as_matrix(mj, spaces.dims[g.range(a)], spaces.dims[g.source(a)],
                                rpath + "/matrices/" + arrow);
        have[a] = true;
      }
      for (int a = 0; a < g.arrow_count(); ++a)
        if (!have[a]) fail(rpath + "/matrices", "no matrix for arrow '" + g.arrow_name(a) + "'");

      project.representations.push_back(
          {std::move(id),
           UnitaryRepresentation(project.groupoid, std::move(spaces), std::move(matrices))});
    }
  }

  if (j.contains("vector_fields")) {
    const json& fields = j["vector_fields"];
    if (!fields.is_array()) fail("/vector_fields", "expected an array");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string fpath = "/vector_fields/" + std::to_string(i);
      const FiniteGroupoid& g = need_groupoid("vector_fields");
      const json& fj = fields[i];
      std::string id = as_string(require(fj, "id", fpath), fpath + "/id");
      const json& values = require(fj, "values", fpath);
      if (!values.is_object()) fail(fpath + "/values", "expected an object");

      VectorField field;
      field.values.assign(g.base_count(), Vector());
      std::vector<bool> have(g.base_count(), false);
      for (const auto& [base, vj] : values.items()) {
        int b;
        try {
          b = g.base_index(base);
        } catch (const LookupError&) {
          fail(fpath + "/values/" + base, "unknown base point");
        }
        if (!vj.is_array()) fail(fpath + "/values/" + base, "expected an array");
        Vector v(vj.size());
        for (std::size_t k = 0; k < vj.size(); ++k)
          v(static_cast<Eigen::Index>(k)) =
              as_complex(vj[k], fpath + "/values/" + base + "/" + std::to_string(k));
        field.values[b] = std::move(v);
        have[b] = true;
      }
      for (int b = 0; b < g.base_count(); ++b)
        if (!have[b]) fail(fpath + "/values", "no value for base point '" + g.base_name(b) + "'");
      project.vector_fields.push_back({std::move(id), std::move(field)});
    }
  }

  if (j.contains("haar")) {
    const json& haars = j["haar"];
    if (!haars.is_array()) fail("/haar", "expected an array");
    for (std::size_t i = 0; i < haars.size(); ++i) {
      const std::string hpath = "/haar/" + std::to_string(i);
      const FiniteGroupoid& g = need_groupoid("haar");
      const json& hj = haars[i];
      std::string id = as_string(require(hj, "id", hpath), hpath + "/id");
      std::string side = as_string(require(hj, "side", hpath), hpath + "/side");
      if (side != "left" && side != "right")
        fail(hpath + "/side", "expected \"left\" or \"right\"");

      HaarSystem haar;
      haar.side = side == "left" ? HaarSide::left : HaarSide::right;
      haar.weights.assign(g.arrow_count(), 0.0);
      std::vector<bool> have(g.arrow_count(), false);
      const json& weights = require(hj, "weights", hpath);
      if (!weights.is_object()) fail(hpath + "/weights", "expected an object");
      for (const auto& [arrow, wj] : weights.items()) {
        int a;
        try {
          a = g.arrow_index(arrow);
        } catch (const LookupError&) {
          fail(hpath + "/weights/" + arrow, "unknown arrow");
        }
        haar.weights[a] = as_double(wj, hpath + "/weights/" + arrow);
        have[a] = true;
      }
      for (int a = 0; a < g.arrow_count(); ++a)
        if (!have[a])
          fail(hpath + "/weights", "no weight for arrow '" + g.arrow_name(a) + "'");
      project.haar_systems.push_back({std::move(id), std::move(haar)});
    }
  }

  if (j.contains("kernels")) {
    const json& kernels = j["kernels"];
    if (!kernels.is_array()) fail("/kernels", "expected an array");
    for (std::size_t i = 0; i < kernels.size(); ++i) {
      const std::string kpath = "/kernels/" + std::to_string(i);
      const FiniteGroupoid& g = need_groupoid("kernels");
      const json& kj = kernels[i];
      std::string id = as_string(require(kj, "id", kpath), kpath + "/id");
      Matrix values = as_matrix(require(kj, "values", kpath), g.arrow_count(), g.arrow_count(),
                                kpath + "/values");
      project.kernels.push_back({std::move(id), GroupoidKernel(project.groupoid, std::move(values))});
    }
  }

  return project;
}

Project load_project(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("project file: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_project_from_string(buffer.str());
}

std::string project_to_string(const Project& project) {
  json j;
  j["format_version"] = project.format_version;
  if (project.groupoid) j["groupoid"] = groupoid_to_json(*project.groupoid);

  if (!project.representations.empty()) {
    const FiniteGroupoid& g = *project.groupoid;
    json reps = json::array();
    for (const auto& named : project.representations) {
      json rj;
      rj["id"] = named.id;
      json dims = json::object();
      for (int b = 0; b < g.base_count(); ++b) dims[g.base_name(b)] = named.value.dim(b);
      rj["dims"] = std::move(dims);
      json mats = json::object();
      for (int a = 0; a < g.arrow_count(); ++a)
        mats[g.arrow_name(a)] = matrix_to_json(named.value.matrix(a));
      rj["matrices"] = std::move(mats);
      reps.push_back(std::move(rj));
    }
    j["representations"] = std::move(reps);
  }

  if (!project.vector_fields.empty()) {
    const FiniteGroupoid& g = *project.groupoid;
    json fields = json::array();
    for (const auto& named : project.vector_fields) {
      json fj;
      fj["id"] = named.id;
      json values = json::object();
      for (int b = 0; b < g.base_count(); ++b) {
        json v = json::array();
        for (Eigen::Index k = 0; k < named.value.values[b].size(); ++k)
          v.push_back(complex_to_json(named.value.values[b](k)));
        values[g.base_name(b)] = std::move(v);
      }
      fj["values"] = std::move(values);
      fields.push_back(std::move(fj));
    }
    j["vector_fields"] = std::move(fields);
  }

  if (!project.haar_systems.empty()) {
    const FiniteGroupoid& g = *project.groupoid;
    json haars = json::array();
    for (const auto& named : project.haar_systems) {
      json hj;
      hj["id"] = named.id;
      hj["side"] = named.value.side == HaarSide::left ? "left" : "right";
      json weights = json::object();
      for (int a = 0; a < g.arrow_count(); ++a)
        weights[g.arrow_name(a)] = named.value.weights[a];
      hj["weights"] = std::move(weights);
      haars.push_back(std::move(hj));
    }
    j["haar"] = std::move(haars);
  }

  if (!project.kernels.empty()) {
    json kernels = json::array();
    for (const auto& named : project.kernels) {
      json kj;
      kj["id"] = named.id;
      kj["values"] = matrix_to_json(named.value.values());
      kernels.push_back(std::move(kj));
    }
    j["kernels"] = std::move(kernels);
  }

  std::string out;
  write_canonical(j, out);
  out += '\n';
  return out;
}

void save_project(const std::filesystem::path& path, const Project& project) {
  std::string text = project_to_string(project);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StructuralError("project file: cannot write '" + path.string() + "'");
  out << text;
}

GroupoidData load_groupoid_data(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("project file: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("project file: not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("groupoid"))
    throw StructuralError("project file: /groupoid: missing section");
  return parse_groupoid(j["groupoid"], "/groupoid");
}

}  // namespace grkhs

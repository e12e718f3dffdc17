#include "wstar/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wstar/errors.hpp"

namespace wstar {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "non-finite value");
  return v;
}

void check_schema(const Json& j, const std::string& path) {
  if (int_field(j, "schema", path) != kSchemaVersion)
    fail(path + ".schema", "unsupported schema version");
}

AlgebraShape shape_from_json(const Json& j, const std::string& path) {
  const Json& blocks = field(field(j, "algebra", path), "blocks", path + ".algebra");
  if (!blocks.is_array() || blocks.empty()) fail(path + ".algebra.blocks", "expected a non-empty array");
  std::vector<int> sizes;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!blocks[i].is_number_integer() || blocks[i].get<int>() < 1)
      fail(path + ".algebra.blocks[" + std::to_string(i) + "]", "expected a positive integer");
    sizes.push_back(blocks[i].get<int>());
  }
  return AlgebraShape(std::move(sizes));
}

HilbertModule module_from_json(const Json& j, const std::string& path) {
  AlgebraShape shape = shape_from_json(j, path);
  const int rank = int_field(j, "module_rank", path);
  if (rank < 1) fail(path + ".module_rank", "must be positive");
  return HilbertModule(std::move(shape), rank);
}

Json module_header(const HilbertModule& module) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["algebra"]["blocks"] = module.shape().block_sizes();
  j["module_rank"] = module.rank();
  return j;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace

Json element_to_json(const AlgebraElement& a) {
  Json out = Json::array();
  for (const auto& blk : a.blocks()) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < blk.rows(); ++r)
      for (Eigen::Index c = 0; c < blk.cols(); ++c) entries.push_back({blk(r, c).real(), blk(r, c).imag()});
    out.push_back(std::move(entries));
  }
  return out;
}

AlgebraElement element_from_json(const Json& j, const AlgebraShape& shape, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != shape.num_blocks())
    fail(path, "expected an array of " + std::to_string(shape.num_blocks()) + " blocks");
  std::vector<Matrix> blocks;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int k = shape.block_size(b);
    const Json& entries = j[static_cast<std::size_t>(b)];
    const std::string bpath = index_path(path, static_cast<std::size_t>(b));
    if (!entries.is_array() || static_cast<int>(entries.size()) != k * k)
      fail(bpath, "expected " + std::to_string(k * k) + " [re, im] entries");
    Matrix m(k, k);
    for (int e = 0; e < k * k; ++e) {
      const Json& z = entries[static_cast<std::size_t>(e)];
      const std::string epath = index_path(bpath, static_cast<std::size_t>(e));
      if (!z.is_array() || z.size() != 2) fail(epath, "expected a [re, im] pair");
      m(e / k, e % k) = Complex(number(z[0], epath + "[0]"), number(z[1], epath + "[1]"));
    }
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(shape, std::move(blocks));
}

Json problem_to_json(const ModuleOperator& k) {
  Json j = module_header(k.module());
  Json rows = Json::array();
  for (int i = 0; i < k.rank(); ++i) {
    Json row = Json::array();
    for (int l = 0; l < k.rank(); ++l) row.push_back(element_to_json(k.entry(i, l)));
    rows.push_back(std::move(row));
  }
  j["operator"] = std::move(rows);
  return j;
}

ModuleOperator problem_from_json(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) fail(root, "expected an object");
  check_schema(j, root);
  const HilbertModule module = module_from_json(j, root);
  const Json& rows = field(j, "operator", root);
  const auto n = static_cast<std::size_t>(module.rank());
  if (!rows.is_array() || rows.size() != n)
    fail(root + ".operator", "expected " + std::to_string(n) + " rows");
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rpath = index_path(root + ".operator", i);
    if (!rows[i].is_array() || rows[i].size() != n) fail(rpath, "expected " + std::to_string(n) + " entries");
    for (std::size_t l = 0; l < n; ++l)
      entries.push_back(element_from_json(rows[i][l], module.shape(), index_path(rpath, l)));
  }
  return ModuleOperator(module, std::move(entries));
}

Json solution_to_json(const DiagonalizationResult& result) {
  if (result.pairs.empty()) throw ShapeError("solution_to_json: empty result");
  Json j = module_header(result.pairs.front().vector.module());
  j["ordered"] = result.ordered;
  j["tolerance_used"] = result.tolerance_used;
  Json pairs = Json::array();
  for (const auto& p : result.pairs) {
    Json pj;
    pj["label"] = p.label ? Json(*p.label) : Json(nullptr);
    Json coords = Json::array();
    for (const auto& c : p.vector.coords()) coords.push_back(element_to_json(c));
    pj["vector"] = std::move(coords);
    pj["value"] = element_to_json(p.value);
    pj["support"] = element_to_json(p.support);
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  Json cert = Json::array();
  for (const auto& rel : result.ordering_certificate)
    cert.push_back({{"lower", rel.lower}, {"upper", rel.upper}, {"verified", rel.verified}});
  j["ordering_certificate"] = std::move(cert);
  return j;
}

DiagonalizationResult solution_from_json(const Json& j, const HilbertModule& module) {
  const std::string root = "$";
  if (!j.is_object()) fail(root, "expected an object");
  check_schema(j, root);
  if (module_from_json(j, root) != module) fail(root, "algebra or module_rank does not match the problem");

  DiagonalizationResult result;
  if (auto it = j.find("ordered"); it != j.end()) {
    if (!it->is_boolean()) fail(root + ".ordered", "expected a boolean");
    result.ordered = it->get<bool>();
  }
  if (auto it = j.find("tolerance_used"); it != j.end())
    result.tolerance_used = number(*it, root + ".tolerance_used");

  const Json& pairs = field(j, "pairs", root);
  if (!pairs.is_array() || pairs.empty()) fail(root + ".pairs", "expected a non-empty array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string ppath = index_path(root + ".pairs", i);
    const Json& pj = pairs[i];
    const Json& coords = field(pj, "vector", ppath);
    if (!coords.is_array() || static_cast<int>(coords.size()) != module.rank())
      fail(ppath + ".vector", "expected " + std::to_string(module.rank()) + " coordinates");
    std::vector<AlgebraElement> elems;
    for (std::size_t c = 0; c < coords.size(); ++c)
      elems.push_back(element_from_json(coords[c], module.shape(), index_path(ppath + ".vector", c)));
    ModuleElement x(module, std::move(elems));
    AlgebraElement value = element_from_json(field(pj, "value", ppath), module.shape(), ppath + ".value");
    AlgebraElement support = pj.contains("support")
                                 ? element_from_json(pj["support"], module.shape(), ppath + ".support")
                                 : inner_product(x, x);
    std::optional<int> label;
    if (auto it = pj.find("label"); it != pj.end() && !it->is_null()) {
      if (!it->is_number_integer() || it->get<int>() < 1) fail(ppath + ".label", "expected a positive integer");
      label = it->get<int>();
    }
    result.pairs.push_back(EigenPair{std::move(x), std::move(value), std::move(support), label});
  }

  if (auto it = j.find("ordering_certificate"); it != j.end()) {
    if (!it->is_array()) fail(root + ".ordering_certificate", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string rpath = index_path(root + ".ordering_certificate", i);
      const Json& rj = (*it)[i];
      OrderRelation rel{int_field(rj, "lower", rpath), int_field(rj, "upper", rpath), false};
      if (auto v = rj.find("verified"); v != rj.end() && v->is_boolean()) rel.verified = v->get<bool>();
      result.ordering_certificate.push_back(rel);
    }
  }
  return result;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["tol"] = r.tol;
  j["condition_i_residual"] = r.condition_i_residual;
  j["condition_ii"] = r.condition_ii;
  j["complement_singular_value"] = r.complement_singular_value;
  j["condition_iii_residuals"] = {{"orthogonality", r.orthogonality_residual},
                                  {"projection_defect", r.projection_defect},
                                  {"vectors_nontrivial", r.vectors_nontrivial}};
  j["condition_iv_residual"] = r.condition_iv_residual;
  j["ordering_checked"] = r.ordering_checked;
  j["ordering_ok"] = r.ordering_ok;
  j["ordering_labels_derived"] = r.ordering_labels_derived;
  Json cert = Json::array();
  for (const auto& rel : r.ordering) cert.push_back(rel.to_string() + (rel.verified ? "" : "  [FAILED]"));
  j["ordering_certificate"] = std::move(cert);
  j["oracle_ok"] = r.oracle_ok;
  j["oracle_max_deviation"] = r.oracle_max_deviation;
  j["overall"] = r.overall ? "pass" : "fail";
  return j;
}

std::string to_canonical_string(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text, const std::string& source_name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source_name << ":" << line << ":" << col << ": malformed JSON";
    throw InputError(msg.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError(path + ": empty file");
  return parse_json_text(text, path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
}

}  // namespace wstar

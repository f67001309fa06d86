#include "rankbar/json_io.hpp"

#include <fstream>
#include <sstream>

#include "rankbar/error.hpp"

namespace rankbar::io {
namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field_of(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t size_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::uint32_t> exponents_of(const Json& j, std::size_t len, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  if (j.size() != len) bad(where, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t v = size_of(j[i], where + "[" + std::to_string(i) + "]");
    if (v > 0xFFFFFFFFULL) bad(where, "exponent too large");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::vector<std::uint32_t> one_based(const Json& j, std::size_t len, std::size_t bound, const std::string& where) {
  auto idx = exponents_of(j, len, where);
  for (auto& i : idx) {
    if (i < 1 || i > bound) bad(where, "index out of range 1.." + std::to_string(bound));
    --i;
  }
  return idx;
}

Json exps_json(std::span<const std::uint32_t> e) { return Json(std::vector<std::uint32_t>(e.begin(), e.end())); }

Json one_based_json(const std::vector<std::uint32_t>& idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(i + 1);
  return a;
}

Scalar scalar_at(const Json& j, const Field& f, const std::string& where) {
  try {
    return scalar_from_json(j, f);
  } catch (const InputError& e) {
    bad(where, e.what());
  }
}

Polynomial polynomial_at(const Json& j, const Field& f, const std::string& where) {
  try {
    return polynomial_from_json(j, f);
  } catch (const InputError& e) {
    bad(where, e.what());
  }
}

Json blocks_json(BlockSet s) {
  Json a = Json::array();
  for (auto b : s.elements()) a.push_back(b + 1);
  return a;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) +
                     " (byte " + std::to_string(e.byte) + ")");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

Json to_json(const Scalar& s) { return s.to_string(); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Polynomial& p) {
  Json j;
  j["vars"] = p.num_vars();
  j["basis"] = to_string(p.basis());
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json t;
    t["exp"] = exps_json(mono.exponents());
    t["coef"] = to_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const PolyVector& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(to_json(p));
  return a;
}

Json to_json(const PolyMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

Json to_json(const Tensor& t) {
  Json j;
  j["n"] = t.n();
  j["d"] = t.d();
  Json entries = Json::array();
  for (const auto& [idx, v] : t.entries()) {
    Json e;
    e["idx"] = one_based_json(idx);
    e["coef"] = to_json(v);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const LinearMap& l) {
  Json j;
  j["family"] = to_string(l.family());
  j["n"] = l.n();
  j["d"] = l.d();
  j["m"] = l.m();
  Json images = Json::array();
  for (const auto& [key, img] : l.images()) {
    Json e;
    if (l.family() == Family::waring) {
      e["exp"] = Json(key);
    } else {
      e["idx"] = one_based_json(key);
    }
    e["matrix"] = to_json(img);
    images.push_back(std::move(e));
  }
  j["images"] = std::move(images);
  return j;
}

Json to_json(const SymbolicDecomposition& dec) {
  Json j;
  j["rank"] = dec.pairs.size();
  Json shift = Json::array();
  for (const auto& s : dec.shift) shift.push_back(to_json(s));
  j["shift"] = std::move(shift);
  j["denominator_degrees"] = dec.denominator_degrees;
  Json terms = Json::array();
  for (const auto& [f, g] : dec.pairs) {
    Json t;
    t["u"] = to_json(f);
    t["v"] = to_json(g);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const HomDecomposition& dec) {
  Json j;
  j["degree"] = dec.degree;
  j["symbolic_rank"] = dec.symbolic_rank;
  j["bound"] = dec.bound();
  Json terms = Json::array();
  for (const auto& t : dec.terms) {
    Json e;
    e["u"] = to_json(t.u);
    e["v"] = to_json(t.v);
    e["deg_u"] = t.deg_u;
    e["deg_v"] = t.deg_v;
    terms.push_back(std::move(e));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const SMDecomposition& dec) {
  Json j;
  j["blocks"] = dec.block_count;
  j["symbolic_rank"] = dec.symbolic_rank;
  j["bound"] = dec.bound();
  Json terms = Json::array();
  for (const auto& t : dec.terms) {
    Json e;
    e["u"] = to_json(t.u);
    e["v"] = to_json(t.v);
    e["S"] = blocks_json(t.blocks);
    terms.push_back(std::move(e));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const BarrierReport& rep) {
  Json j;
  j["family"] = to_string(rep.family);
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["m"] = rep.m;
  j["r"] = rep.r;
  j["per_unit_barrier"] = rep.per_unit;
  j["barrier"] = rep.barrier;
  j["observed_max_rank"] = rep.observed_max_rank;
  j["trials"] = rep.trials;
  j["membership_failures"] = rep.membership_failures;
  j["pass"] = rep.pass;
  j["seed"] = rep.seed;
  j["ranks"] = rep.ranks;
  return j;
}

Json to_json(const ReferenceValues& ref) {
  Json j;
  j["ah95_generic_waring_rank"] = ref.ah95;
  j["gl17_intro"] = ref.gl17_intro;
  j["gl17_rank_bounds"] = ref.gl17_rank_bounds;
  j["aft11"] = ref.aft11;
  j["aft11_rounded"] = ref.aft11_rounded;
  j["random_tensor_rank"] = ref.random_tensor_rank;
  return j;
}

Json to_json(const GapRow& row) {
  Json j;
  j["n"] = row.n;
  j["d"] = row.d;
  j["waring_barrier_per_r"] = row.waring_barrier;
  j["tensor_barrier_per_r"] = row.tensor_barrier;
  j["reference"] = to_json(row.reference);
  return j;
}

Json to_json(const PsiImage& psi) {
  Json j;
  j["n"] = psi.n;
  j["D"] = psi.D;
  j["d"] = psi.d;
  Json coords = Json::array();
  for (const auto& [x, p] : psi.coords) {
    Json e;
    e["exp"] = exps_json(x.exponents());
    e["poly"] = to_json(p);
    coords.push_back(std::move(e));
  }
  j["coords"] = std::move(coords);
  return j;
}

Json to_json(const LowerBoundResult& res) {
  Json j;
  j["mu_f"] = res.mu_f;
  j["mu_s"] = res.mu_s;
  j["bound"] = res.bound.get_str();
  j["bound_ceiling"] = res.bound_ceiling.get_str();
  j["barrier"] = res.barrier;
  j["within_barrier"] = res.within_barrier;
  return j;
}

// ---------------------------------------------------------------------------

Scalar scalar_from_json(const Json& j, const Field& f) {
  if (j.is_number_integer()) return Scalar::from_string(j.dump(), f);
  if (j.is_string()) return Scalar::from_string(j.get<std::string>(), f);
  throw InputError("coefficient must be an integer or a \"p/q\" string");
}

Matrix matrix_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string where = "row " + std::to_string(i + 1);
    if (!j[i].is_array()) bad(where, "expected an array");
    if (j[i].size() != cols) bad(where, "ragged rows: expected " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_at(j[i][k], f, where + ", column " + std::to_string(k + 1));
  }
  return m;
}

Polynomial polynomial_from_json(const Json& j, const Field& f) {
  const std::size_t nv = size_of(field_of(j, "vars", "polynomial"), "polynomial.vars");
  Basis basis = Basis::standard;
  if (auto it = j.find("basis"); it != j.end()) {
    if (*it == "standard") {
      basis = Basis::standard;
    } else if (*it == "divided") {
      basis = Basis::divided;
    } else {
      bad("polynomial.basis", "expected \"standard\" or \"divided\"");
    }
  }
  const Json& terms = field_of(j, "terms", "polynomial");
  if (!terms.is_array()) bad("polynomial.terms", "expected an array");
  std::vector<Polynomial::Term> out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "polynomial.terms[" + std::to_string(t) + "]";
    auto e = exponents_of(field_of(terms[t], "exp", where), nv, where + ".exp");
    out.emplace_back(Monomial(std::move(e)), scalar_at(field_of(terms[t], "coef", where), f, where + ".coef"));
  }
  return Polynomial::from_terms(nv, basis, std::move(out));
}

PolyVector poly_vector_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) throw InputError("polynomial vector must be an array");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(polynomial_at(j[i], f, "entry " + std::to_string(i + 1)));
  try {
    return PolyVector(std::move(out));
  } catch (const ContractViolation& e) {
    throw InputError(e.what());
  }
}

PolyMatrix poly_matrix_from_json(const Json& j, const Field& f) {
  const std::size_t rows = size_of(field_of(j, "rows", "matrix"), "matrix.rows");
  const std::size_t cols = size_of(field_of(j, "cols", "matrix"), "matrix.cols");
  const Json& entries = field_of(j, "entries", "matrix");
  if (!entries.is_array() || entries.size() != rows) {
    bad("matrix.entries", "expected " + std::to_string(rows) + " rows");
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string where = "matrix row " + std::to_string(i + 1);
    if (!entries[i].is_array()) bad(where, "expected an array");
    if (entries[i].size() != cols) {
      bad(where, "ragged rows: expected " + std::to_string(cols) + " entries, got " +
                     std::to_string(entries[i].size()));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      out.push_back(polynomial_at(entries[i][k], f, "matrix entry (" + std::to_string(i + 1) + ", " +
                                                        std::to_string(k + 1) + ")"));
    }
  }
  if (out.empty()) return PolyMatrix(rows, cols, 0);
  try {
    return PolyMatrix(rows, cols, std::move(out));
  } catch (const ContractViolation& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
}

Tensor tensor_from_json(const Json& j, const Field& f) {
  const std::size_t n = size_of(field_of(j, "n", "tensor"), "tensor.n");
  const std::size_t d = size_of(field_of(j, "d", "tensor"), "tensor.d");
  if (n == 0 || d == 0) bad("tensor", "n and d must be positive");
  Tensor t(n, d);
  const Json& entries = field_of(j, "entries", "tensor");
  if (!entries.is_array()) bad("tensor.entries", "expected an array");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "tensor.entries[" + std::to_string(k) + "]";
    auto idx = one_based(field_of(entries[k], "idx", where), d, n, where + ".idx");
    t.set(idx, t.at(idx) + scalar_at(field_of(entries[k], "coef", where), f, where + ".coef"));
  }
  return t;
}

LinearMap linear_map_from_json(const Json& j, const Field& f) {
  const Json& fam = field_of(j, "family", "map");
  if (!fam.is_string()) bad("map.family", "expected a string");
  const Family family = family_from_string(fam.get<std::string>());
  const std::size_t n = size_of(field_of(j, "n", "map"), "map.n");
  const std::size_t d = size_of(field_of(j, "d", "map"), "map.d");
  const std::size_t m = size_of(field_of(j, "m", "map"), "map.m");
  if (n == 0 || d == 0 || m == 0) bad("map", "n, d and m must be positive");
  LinearMap l(family, n, d, m);
  const Json& images = field_of(j, "images", "map");
  if (!images.is_array()) bad("map.images", "expected an array");
  for (std::size_t k = 0; k < images.size(); ++k) {
    const std::string where = "map.images[" + std::to_string(k) + "]";
    LinearMap::Key key;
    if (family == Family::waring) {
      key = exponents_of(field_of(images[k], "exp", where), n, where + ".exp");
    } else {
      key = one_based(field_of(images[k], "idx", where), d, n, where + ".idx");
    }
    if (!l.is_valid_key(key)) bad(where, "basis index outside the domain (degree exceeds d?)");
    Matrix img;
    try {
      img = matrix_from_json(field_of(images[k], "matrix", where), f);
    } catch (const InputError& e) {
      bad(where + ".matrix", e.what());
    }
    if (img.rows() != m || img.cols() != m) bad(where + ".matrix", "expected an m x m matrix");
    if (l.images().count(key)) bad(where, "duplicate basis index");
    l.set_image(key, std::move(img));
  }
  return l;
}

HomDecomposition hom_decomposition_from_json(const Json& j, const Field& f) {
  HomDecomposition dec;
  if (auto it = j.find("degree"); it != j.end()) dec.degree = it->get<int>();
  if (auto it = j.find("symbolic_rank"); it != j.end()) dec.symbolic_rank = size_of(*it, "symbolic_rank");
  const Json& terms = field_of(j, "terms", "decomposition");
  if (!terms.is_array()) bad("decomposition.terms", "expected an array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "term " + std::to_string(k + 1);
    HomTerm t;
    t.u = poly_vector_from_json(field_of(terms[k], "u", where), f);
    t.v = poly_vector_from_json(field_of(terms[k], "v", where), f);
    t.deg_u = field_of(terms[k], "deg_u", where).get<int>();
    t.deg_v = field_of(terms[k], "deg_v", where).get<int>();
    dec.terms.push_back(std::move(t));
  }
  return dec;
}

SMDecomposition sm_decomposition_from_json(const Json& j, const Field& f) {
  SMDecomposition dec;
  if (auto it = j.find("blocks"); it != j.end()) dec.block_count = size_of(*it, "blocks");
  if (auto it = j.find("symbolic_rank"); it != j.end()) dec.symbolic_rank = size_of(*it, "symbolic_rank");
  const Json& terms = field_of(j, "terms", "decomposition");
  if (!terms.is_array()) bad("decomposition.terms", "expected an array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "term " + std::to_string(k + 1);
    SMTerm t;
    t.u = poly_vector_from_json(field_of(terms[k], "u", where), f);
    t.v = poly_vector_from_json(field_of(terms[k], "v", where), f);
    const Json& s = field_of(terms[k], "S", where);
    if (!s.is_array()) bad(where + ".S", "expected an array");
    std::vector<std::size_t> blocks;
    for (const auto& b : s) {
      const std::size_t v = size_of(b, where + ".S");
      if (v < 1 || v > 32) bad(where + ".S", "block index out of range");
      blocks.push_back(v - 1);
    }
    t.blocks = BlockSet::of(blocks);
    dec.terms.push_back(std::move(t));
  }
  return dec;
}

VariablePartition partition_from_json(const Json& j) {
  const std::size_t nv = size_of(field_of(j, "vars", "partition"), "partition.vars");
  const Json& blocks = field_of(j, "blocks", "partition");
  if (!blocks.is_array()) bad("partition.blocks", "expected an array");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string where = "partition.blocks[" + std::to_string(b) + "]";
    if (!blocks[b].is_array()) bad(where, "expected an array");
    std::vector<std::size_t> block;
    for (const auto& v : blocks[b]) {
      const std::size_t var = size_of(v, where);
      if (var < 1 || var > nv) bad(where, "variable index out of range 1.." + std::to_string(nv));
      block.push_back(var - 1);
    }
    out.push_back(std::move(block));
  }
  try {
    return VariablePartition(nv, std::move(out));
  } catch (const ContractViolation& e) {
    throw InputError(std::string("partition: ") + e.what());
  }
}

}  // namespace rankbar::io

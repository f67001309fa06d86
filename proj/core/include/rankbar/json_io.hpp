#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "rankbar/barrier_lab.hpp"
#include "rankbar/decomposition.hpp"
#include "rankbar/depth3.hpp"
#include "rankbar/rank_methods.hpp"

namespace rankbar::io {

using Json = nlohmann::ordered_json;

/// Parses text, reporting syntax errors as InputError with line and column.
Json parse(std::string_view text);
std::string read_file(const std::string& path);
/// Two-space indented, trailing newline.
std::string dump(const Json& j);

Json to_json(const Scalar& s);
Json to_json(const Matrix& m);
Json to_json(const Polynomial& p);
Json to_json(const PolyVector& v);
Json to_json(const PolyMatrix& m);
Json to_json(const Tensor& t);
Json to_json(const LinearMap& l);
Json to_json(const SymbolicDecomposition& dec);
Json to_json(const HomDecomposition& dec);
Json to_json(const SMDecomposition& dec);
Json to_json(const BarrierReport& rep);
Json to_json(const GapRow& row);
Json to_json(const PsiImage& psi);
Json to_json(const LowerBoundResult& res);
Json to_json(const ReferenceValues& ref);

// Readers throw InputError naming the offending JSON path.
Scalar scalar_from_json(const Json& j, const Field& f);
Matrix matrix_from_json(const Json& j, const Field& f);
Polynomial polynomial_from_json(const Json& j, const Field& f);
PolyVector poly_vector_from_json(const Json& j, const Field& f);
PolyMatrix poly_matrix_from_json(const Json& j, const Field& f);
Tensor tensor_from_json(const Json& j, const Field& f);
LinearMap linear_map_from_json(const Json& j, const Field& f);
HomDecomposition hom_decomposition_from_json(const Json& j, const Field& f);
SMDecomposition sm_decomposition_from_json(const Json& j, const Field& f);
/// {"vars": n, "blocks": [[1, 2], [3, 4], ...]} with 1-based variables.
VariablePartition partition_from_json(const Json& j);

}  // namespace rankbar::io

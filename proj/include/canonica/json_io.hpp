#pragma once

#include <json.hpp>
#include <string>

#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/equivalence.hpp"
#include "canonica/iteration.hpp"
#include "canonica/matrix.hpp"
#include "canonica/predicates.hpp"
#include "canonica/regularization.hpp"

namespace canonica::io {

using nlohmann::json;

inline constexpr const char* kSchema = "canonica/1";

json complex_to_json(Complex z);
/// [re, im] or a bare number; ParseError otherwise.
Complex complex_from_json(const json& j);

/// {"rows": n, "cols": m, "data": [[re, im], ...]} row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
Matrix parse_matrix(const std::string& text);
Matrix read_matrix_file(const std::string& path);

std::vector<Complex> vector_from_json(const json& j);

json to_json(const ClassReport& r);
json to_json(const CongruenceCanonicalForm& f);
CongruenceCanonicalForm congruence_form_from_json(const json& j);
json to_json(const StarCanonicalForm& f);
StarCanonicalForm star_form_from_json(const json& j);
json to_json(const BlockList& b);
BlockList block_list_from_json(const json& j);
json to_json(const ReducedForm& r);
json to_json(const EquivalenceReport& r);
json to_json(const IterationTrace& t);
json to_json(const BoundednessReport& b);

std::string dump(const json& j);

}  // namespace canonica::io

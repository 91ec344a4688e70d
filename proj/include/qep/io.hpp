#ifndef QEP_IO_HPP
#define QEP_IO_HPP

#include <string>
#include <vector>

#include "qep/classical.hpp"
#include "qep/harness.hpp"
#include "qep/projection.hpp"
#include "qep/rules.hpp"
#include "qep/states.hpp"

namespace qep {

// JSON wire formats (all numbers are plain doubles; +infinity is the string
// token "inf"):
//   matrix      {"dim": d, "re": [[...]], "im": [[...]]}
//   state       {"matrix": <matrix>, "normalized": true}
//   resolution  {"projectors": [<matrix>, ...]}
//               or {"basis": <matrix>, "groups": [[1-indexed], ...]}
//   constraint  {"type": "commutant", "resolution": ...}
//               {"type": "trace-pinned", "resolution": ..., "weights": [...]}
//               {"type": "face", "projector": <matrix>}
//               {"type": "support-block", "projector": <matrix>}
//   table       {"table": [[p(x0,t0), p(x0,t1), ...], ...]}
//   vector      {"re": [...], "im": [...]}

std::string matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const std::string& text);

std::string state_to_json(const DensityOperator& state);
DensityOperator state_from_json(const std::string& text);

OrthogonalResolution resolution_from_json(const std::string& text);
Projector projector_from_json(const std::string& text);
ConstraintSet constraint_from_json(const std::string& text);
JointTable table_from_json(const std::string& text);
Vector vector_from_json(const std::string& text);
std::vector<double> real_list_from_json(const std::string& text);

std::string vector_to_json(const Vector& v);
std::string real_list_to_json(const std::vector<double>& v);
std::string extended_to_json(const ExtendedReal& v);
std::string projection_result_to_json(const ProjectionResult& r);
std::string mre_result_to_json(const MreResult& r);
std::string report_to_json(const HarnessReport& r);

// Reads either a file path or inline JSON (detected by a leading '{' or '[').
std::string slurp_input(const std::string& path_or_json);

}  // namespace qep

#endif  // QEP_IO_HPP

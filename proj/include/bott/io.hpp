#pragma once

#include <json.hpp>
#include <string>

#include "bott/circle.hpp"
#include "bott/loop.hpp"
#include "bott/op.hpp"
#include "bott/report.hpp"

namespace bott {

using json = nlohmann::ordered_json;

struct NotBuilderUnit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rationals travel as strings "p" or "p/q".
json rational_json(const Rational& x);
Rational rational_from_json(const json& j);
json circle_json(const CircleScalar& x);  // {"p": "...", "q": "..."} for p + q s

json mat_json(const QMat& m);
QMat mat_from_json(const json& j, int d);

// {"d": d, "terms": [{"exp": k, "coeff": [[...]]}]}
json loop_json(const CyclicLoop& a);
CyclicLoop loop_from_json(const json& j);

// Entries are Laurent polynomials in v: [{"v": k, "coeff": [[...]]}]
json entry_json(const Entry<Rational>& e);
Entry<Rational> entry_from_json(const json& j, int d);

// {"d", "laurent": {"neg": [...], "pos": [...]}, "finite": [{"i", "j", "entry"}]}
json op_json(const Op<Rational>& A);
Op<Rational> op_from_json(const json& j);

// {"d", "generators": [{"kind": "constant|monomial|mixer|unipotent", ...}]}
json generator_json(const Generator& g);
LoopUnit unit_from_json(const json& j);
json unit_json(int d, const std::vector<Generator>& gens);

// {"d", "factors": [{"generators": [...], "window": {"m", "n", "tag"}}]}, a_1 first.
LoopDecomposition decomposition_from_json(const json& j);

// Rows sorted by anchor, then instance.
void sort_rows(Report& r);
json report_json(const Report& r, const json& config);
std::string report_csv(const Report& r);

std::string csv_field(const std::string& s);

}  // namespace bott

#pragma once

// JSON forms of the exact objects. Rationals are strings "p/q" in lowest
// terms. Values of Rep(I, BR+) are {"fin": "p/q"} or "inf"; coordinates on a
// broken line are "p/q", "+inf" or "-inf". Object keys come out sorted, so a
// fixed input gives byte-identical output.

#include "json.hpp"

#include "brokenlines/family.hpp"
#include "brokenlines/linalg.hpp"
#include "brokenlines/morse.hpp"
#include "brokenlines/order.hpp"
#include "brokenlines/rep_space.hpp"
#include "brokenlines/sheaf.hpp"
#include "brokenlines/tw.hpp"

namespace bl::io {

using Json = nlohmann::json;

/// {"fin": "p/q"}, "inf" or "-inf".
Json to_json(const ExtReal& x);
Json to_json(const LinPreorder& p);
Json to_json(const OrderMorphism& f);
Json to_json(const ConvexEquiv& e);
Json to_json(const Amalgam& k);
/// {"base": preorder, "enumeration": [...], "gaps": chart coordinates along it}.
Json to_json(const RepPoint& alpha);
Json to_json(const BrokenLine& line);
/// {"a": component, "t": coordinate}.
Json to_json(const LinePoint& x);
Json to_json(const MarkedLine& fiber);
Json to_json(const Matrix& m);
Json to_json(const NonunitalAlgebra& a);
Json to_json(const GlobalSheaf& f);
Json to_json(const SampledFamily& fam);
Json to_json(const FamilyEvaluation& ev);
Json to_json(const TwObject& x);

ExtReal ext_from_json(const Json& j);
LinPreorder preorder_from_json(const Json& j);
RepPoint rep_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
/// {"dim": d, "c": c[k][i][j] as "p/q"} with e_i e_j = sum_k c[k][i][j] e_k.
NonunitalAlgebra algebra_from_json(const Json& j);
/// {"N": N, "V": [dims], "gen": {"n,k": matrix}}.
GlobalSheaf global_sheaf_from_json(const Json& j);
/// {"index": preorder, "samples": [{"id", "gaps"}], "edges": [[a, b]], "limits": [...]};
/// gaps run along the natural enumeration of the index.
SampledFamily family_from_json(const Json& j);

/// Critical points, trajectories and their extracted lines.
Json morse_report(const morse::Surface& s, const std::vector<morse::CriticalPoint>& crits,
                  const std::vector<morse::BrokenTrajectory>& trajectories, const morse::MorseConfig& cfg);

/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace bl::io

#pragma once

// JSON encodings shared by the command-line tool and the tests. Parsing
// failures raise FormatError.

#include <json.hpp>
#include <string>

#include "semimoment/counterexample.hpp"
#include "semimoment/fiber.hpp"
#include "semimoment/measure.hpp"
#include "semimoment/moment.hpp"
#include "semimoment/semialg.hpp"
#include "semimoment/univariate.hpp"

namespace semimoment::io {

using Json = nlohmann::ordered_json;

/// Parses text; FormatError with the parser's message on failure.
Json parse(const std::string& text);
Json read_file(const std::string& path);

/// {"dim": d, "terms": [{"exps": [..], "coef": c}, ...]}, terms in grlex order.
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

/// {"dim": d, "generators": [polynomial, ...]}
Json to_json(const SemiAlgebraicSet& K);
SemiAlgebraicSet set_from_json(const Json& j);

/// {"points": [[..], ...], "weights": [..]}
Json to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

/// {"dim", "max_degree", optional "weights", "moments": {"e1,..,ed": value, ...}}
/// in basis order; reading requires the complete basis. Reading also accepts
/// {"measure": <measure>, "max_degree": D}.
Json to_json(const MomentFunctional& L);
MomentFunctional functional_from_json(const Json& j);

/// {"moments": [m_0, ..., m_2n]}
Json to_json(const MomentVector1D& m);
MomentVector1D moments_from_json(const Json& j);

/// {"polys": [polynomial, ...], "ranges": [[lo, hi], ...]}
Json to_json(const BoundedPolySpec& h);
BoundedPolySpec bounded_from_json(const Json& j);

Json to_json(const EigenCheck& c);
Json to_json(const PositivityReport& r);
Json to_json(const QuadratureResult& q);
Json to_json(const Theorem1Report& r);
Json to_json(const CounterexampleCertificate& c);
Json to_json(const Fixture& fx);

}  // namespace semimoment::io

#pragma once

// JSON forms of the library's values. Field elements are lowercase hex of the
// bit-packed coefficients; a field is {"m": m, "modulus": hex}.

#include "json.hpp"

#include "wiresafe/audit.hpp"
#include "wiresafe/coset.hpp"
#include "wiresafe/gf.hpp"
#include "wiresafe/netsim.hpp"
#include "wiresafe/rankmetric.hpp"

namespace wiresafe {

using Json = nlohmann::json;

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

Json vector_to_json(const ExtVector& v);
ExtVector vector_from_json(const Json& j, const FieldSpec& spec);

Json matrix_to_json(const ExtMatrix& m);
Json matrix_to_json(const BaseMatrix& m);
BaseMatrix base_matrix_from_json(const Json& j);
ExtMatrix ext_matrix_from_json(const Json& j, const FieldSpec& spec);

/// {"field", "n", "k", "generators"}, plus "H" for readers. H is recomputed on load.
Json code_to_json(const GabidulinCode& code);
GabidulinCode code_from_json(const Json& j);

/// Scheme document: {"scheme": "gabidulin" | "mds" | "cleartext" | "custom", "field", "n", "k", "mu", "H"},
/// plus "generators" for Gabidulin schemes. Gabidulin schemes are rebuilt from
/// their generators; the others from "H".
Json scheme_to_json(const GabidulinCode& code);
Json scheme_to_json(const std::string& kind, const ExtMatrix& h);
CosetScheme scheme_from_json(const Json& j);

/// {"nodes": [...], "edges": [{"id", "from", "to"}], "source", "sinks": [...]}.
/// Node names may be strings or integers.
Json network_to_json(const Network& net);
Network network_from_json(const Json& j);

Json entropy_to_json(const Entropy& h);
Json entry_to_json(const SecrecyEntry& e);
/// {"entries": [...], "summary": {"sets_audited", "secure", "failures", "singular_stacks"}}.
Json report_to_json(const SecrecyReport& report);

}  // namespace wiresafe

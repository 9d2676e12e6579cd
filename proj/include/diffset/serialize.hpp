#pragma once

#include "diffset/feasibility.hpp"
#include "diffset/group_ring.hpp"
#include "diffset/search.hpp"
#include "diffset/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace diffset {

using Json = nlohmann::json;

// Scalar encodings. Integers become decimal strings so no report field ever
// depends on 64-bit range; rationals are "p" or "p/q" in lowest terms;
// quadratic values are {d, e, f} against the integral basis; cyclotomic
// values are [m, [c0, c1, ...]].
Json json_int(const Int& z);
Json json_rat(const Rat& q);
Json json_quad(const Quad& a);
Json json_cyclo(const CycloInt& z);

Json group_json(const AbelianGroup& g); // invariant factor list
Json dset_json(const GroupRingElement& d);
Json design_cert_json(const DesignCert& cert);
Json spectrum_json(const SpectrumReport& rep);
Json profile_json(const ThreeValueProfile& prof);
Json condition_report_json(const ConditionReport& rep);
Json special_report_json(const SpecialCaseReport& rep);
Json audit_json(const AuditReport& rep);

Json sweep_spec_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const Json& j);
Json checkpoint_json(const SweepCheckpoint& ck);
SweepCheckpoint checkpoint_from_json(const Json& j);

// Canonical text. Object keys are stored sorted, so fixing the whitespace
// makes parse-then-reemit byte-identical.
std::string canonical_line(const Json& j);   // compact, for JSON-lines streams
std::string canonical_pretty(const Json& j); // two-space indent

// Plain-text literals. Group literals are comma-separated invariant factors
// ("4,4"); element literals are comma-separated coordinates against those
// factors ("1,2"), reduced into range. A group given as arbitrary cyclic
// orders is normalized first, so coordinates always refer to the normalized
// factors.
std::string group_literal(const AbelianGroup& g);
AbelianGroup parse_group_literal(const std::string& text);
GroupElem parse_element_literal(const AbelianGroup& g, const std::string& text);

// One instance per line: "group=<factors>; set=<tuple>;<tuple>;...".
std::string dset_line(const GroupRingElement& d);
GroupRingElement parse_dset_line(const std::string& line);

// CSV export: parameter columns for the report's kind, then context and one
// column per ledger condition id, in catalog order. Each report yields one
// row per d1 ledger.
std::string csv_header(const ConditionReport& rep);
std::vector<std::string> csv_rows(const ConditionReport& rep);

} // namespace diffset

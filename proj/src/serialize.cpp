#include "diffset/serialize.hpp"

#include "diffset/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace diffset {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& raw, const char* what) {
    std::string s = strip(raw);
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw malformed_error(std::string(what) + ": not an integer: '" + raw + "'");
    return value;
}

const char* recognition_kind_name(Recognition::Kind k) {
    switch (k) {
        case Recognition::Kind::rational: return "rational";
        case Recognition::Kind::quadratic: return "quadratic";
        case Recognition::Kind::none: return "none";
    }
    throw contract_error("unknown recognition kind");
}

Json json_longs(const std::vector<long>& xs) {
    Json arr = Json::array();
    for (long x : xs) arr.push_back(x);
    return arr;
}

template <typename T>
Json json_index_lists(const std::vector<std::vector<T>>& xss) {
    Json arr = Json::array();
    for (const auto& xs : xss) {
        Json inner = Json::array();
        for (T x : xs) inner.push_back(static_cast<long>(x));
        arr.push_back(std::move(inner));
    }
    return arr;
}

Json json_strings(const std::vector<std::string>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs) arr.push_back(x);
    return arr;
}

long get_long(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw malformed_error(std::string("expected integer field '") + key + "'");
    return j[key].get<long>();
}

} // namespace

Json json_int(const Int& z) { return z.get_str(); }

Json json_rat(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Json json_quad(const Quad& a) {
    return Json{{"d", a.d}, {"e", json_rat(a.e)}, {"f", json_rat(a.f)}};
}

Json json_cyclo(const CycloInt& z) {
    Json coeffs = Json::array();
    for (const Int& c : z.coeffs()) coeffs.push_back(json_int(c));
    return Json::array({z.modulus(), std::move(coeffs)});
}

Json group_json(const AbelianGroup& g) { return json_longs(g.factors()); }

Json dset_json(const GroupRingElement& d) {
    Json set = Json::array();
    const AbelianGroup& g = d.group();
    for (long i = 0; i < g.order(); ++i)
        if (d.coeff(i) != 0) set.push_back(json_longs(g.element(i)));
    return Json{{"group", group_json(g)}, {"set", std::move(set)}};
}

Json design_cert_json(const DesignCert& cert) {
    return Json{{"is_ds", cert.is_ds},
                {"k", cert.k},
                {"lambda", cert.lambda},
                {"n", cert.n},
                {"reason", cert.reason}};
}

Json spectrum_json(const SpectrumReport& rep) {
    Json values = Json::array();
    for (const CycloInt& z : rep.values) values.push_back(json_cyclo(z));
    Json recognized = Json::array();
    for (const Recognition& r : rep.recognized) {
        Json item{{"kind", recognition_kind_name(r.kind)}, {"orbit_size", r.orbit_size}};
        item["value"] = r.kind == Recognition::Kind::none ? Json() : json_quad(r.value);
        recognized.push_back(std::move(item));
    }
    Json three;
    if (rep.three) {
        const ThreeValueData& t = *rep.three;
        three = Json{{"a", json_quad(t.a)},
                     {"a_bar", json_quad(t.a_bar)},
                     {"a_bar_pos", static_cast<long>(t.a_bar_pos)},
                     {"a_pos", static_cast<long>(t.a_pos)},
                     {"c", json_int(t.c)},
                     {"c_pos", static_cast<long>(t.c_pos)},
                     {"d", t.d},
                     {"fixed_by_t", t.fixed_by_t},
                     {"fixing_t", json_longs(t.fixing_t)},
                     {"t_index", t.t_index}};
    }
    return Json{{"d1", rep.d1},
                {"galois_orbits", json_index_lists(rep.galois_orbits)},
                {"k", rep.k},
                {"orbit_case", rep.orbit_case ? Json(*rep.orbit_case) : Json()},
                {"recognized", std::move(recognized)},
                {"three", std::move(three)},
                {"three_absent_reason", rep.three_absent_reason},
                {"u_sets", json_index_lists(rep.u_sets)},
                {"v", rep.v},
                {"values", std::move(values)}};
}

Json profile_json(const ThreeValueProfile& prof) {
    return Json{{"a", json_quad(prof.a)},
                {"a_bar", json_quad(prof.a_bar)},
                {"d", prof.d},
                {"d1", prof.d1},
                {"delta", json_int(prof.delta)},
                {"e1", json_int(prof.e1)},
                {"e2", json_int(prof.e2)},
                {"e3", json_int(prof.e3)},
                {"e4", json_int(prof.e4)},
                {"intersection", json_int(prof.intersection)},
                {"k", json_int(prof.k)},
                {"n", json_int(prof.n)},
                {"omega", json_quad(prof.omega)},
                {"r", json_rat(prof.r)},
                {"sqrt_n", json_int(prof.sqrt_n)},
                {"table_checked", prof.table_checked},
                {"u_a", json_int(prof.u_a)},
                {"u_c", json_int(prof.u_c)},
                {"v", json_int(prof.v)}};
}

Json condition_report_json(const ConditionReport& rep) {
    Json ledgers = Json::array();
    for (const D1Ledger& led : rep.ledgers) {
        Json items = Json::array();
        for (const ConditionItem& item : led.items)
            items.push_back(Json{{"id", item.id},
                                 {"statement", item.statement},
                                 {"verdict", verdict_name(item.verdict)},
                                 {"witness", item.witness}});
        ledgers.push_back(
            Json{{"d1", led.d1}, {"fails", led.fails}, {"items", std::move(items)}});
    }

    Json derived{{"a", json_quad(rep.a)},
                 {"d", rep.d},
                 {"delta", json_int(rep.delta)},
                 {"k", json_int(rep.k)},
                 {"lambda", json_int(rep.lambda)},
                 {"n", json_int(rep.n)},
                 {"p", json_int(rep.p)},
                 {"s", rep.s},
                 {"sqrt_n", json_int(rep.sqrt_n)},
                 {"v", json_int(rep.v)},
                 {"w", json_int(rep.w)}};
    if (rep.u) derived["u"] = json_int(*rep.u);

    Json params;
    if (rep.odd_prime) {
        params = Json{{"alpha", json_int(rep.odd_prime->alpha)},
                      {"eta", json_int(rep.odd_prime->eta)},
                      {"gamma", json_int(rep.odd_prime->gamma)},
                      {"p", json_int(rep.odd_prime->p)},
                      {"s", rep.odd_prime->s},
                      {"x", rep.odd_prime->x}};
    } else if (rep.quad) {
        params = Json{{"d", rep.quad->d},
                      {"gamma", json_int(rep.quad->gamma)},
                      {"u1", json_int(rep.quad->u1)},
                      {"u2", json_int(rep.quad->u2)}};
    } else {
        params = Json{{"a", json_quad(rep.a)},
                      {"d1", rep.ledgers.empty() ? 0 : rep.ledgers.front().d1},
                      {"k", json_int(rep.k)},
                      {"n", json_int(rep.n)},
                      {"p", json_int(rep.p)},
                      {"v", json_int(rep.v)}};
    }

    Json quotient;
    if (rep.min_l || rep.max_l)
        quotient = Json{{"max_l", rep.max_l ? json_int(*rep.max_l) : Json()},
                        {"min_l", rep.min_l ? json_int(*rep.min_l) : Json()}};

    return Json{{"d1_ledgers", std::move(ledgers)},
                {"derived", std::move(derived)},
                {"feasible", rep.feasible},
                {"kind", rep.kind},
                {"notes", json_strings(rep.notes)},
                {"params", std::move(params)},
                {"quotient", std::move(quotient)}};
}

Json special_report_json(const SpecialCaseReport& rep) {
    return Json{{"applicable", rep.applicable},
                {"d1", rep.d1},
                {"deductions", json_strings(rep.deductions)},
                {"feasible", rep.feasible},
                {"h_order", json_int(rep.h_order)},
                {"m", rep.m},
                {"m_order", json_int(rep.m_order)},
                {"m_subgroup_forced", rep.m_subgroup_forced},
                {"minus_type", rep.minus_type},
                {"p_group", rep.p_group},
                {"plus_type", rep.plus_type},
                {"reason", rep.reason},
                {"trace_zero", rep.trace_zero}};
}

Json audit_json(const AuditReport& rep) {
    return Json{{"applicable", rep.applicable},
                {"d1", rep.d1},
                {"h_elems", json_longs(rep.h_elems)},
                {"h_order", rep.h_order},
                {"h_perp_equals_m", rep.h_perp_equals_m},
                {"hadamard", rep.hadamard},
                {"m_chars", json_longs(rep.m_chars)},
                {"m_param", rep.m_param},
                {"m_subgroup", rep.m_subgroup},
                {"p_group", rep.p_group},
                {"reason", rep.reason},
                {"table2_ok", rep.table2_ok}};
}

Json sweep_spec_json(const SweepSpec& spec) {
    return Json{{"alpha_max", spec.alpha_max},
                {"eta_max", spec.eta_max},
                {"gamma_max", spec.gamma_max},
                {"jobs", spec.jobs},
                {"kind", sweep_case_name(spec.kind)},
                {"near_miss_threshold", spec.near_miss_threshold},
                {"primes", json_longs(spec.primes)},
                {"quad_gamma_max", spec.quad_gamma_max},
                {"s_max", spec.s_max},
                {"u1_min", spec.u1_min},
                {"u2_max", spec.u2_max},
                {"x_max", spec.x_max}};
}

SweepSpec sweep_spec_from_json(const Json& j) {
    if (!j.is_object()) throw malformed_error("sweep spec: expected an object");
    SweepSpec spec;
    if (!j.contains("kind") || !j["kind"].is_string())
        throw malformed_error("sweep spec: expected string field 'kind'");
    spec.kind = parse_sweep_case(j["kind"].get<std::string>());
    if (!j.contains("primes") || !j["primes"].is_array())
        throw malformed_error("sweep spec: expected array field 'primes'");
    spec.primes.clear();
    for (const Json& p : j["primes"]) {
        if (!p.is_number_integer()) throw malformed_error("sweep spec: non-integer prime");
        spec.primes.push_back(p.get<long>());
    }
    spec.x_max = get_long(j, "x_max");
    spec.s_max = get_long(j, "s_max");
    spec.alpha_max = get_long(j, "alpha_max");
    spec.eta_max = get_long(j, "eta_max");
    spec.gamma_max = get_long(j, "gamma_max");
    spec.u1_min = get_long(j, "u1_min");
    spec.u2_max = get_long(j, "u2_max");
    spec.quad_gamma_max = get_long(j, "quad_gamma_max");
    spec.near_miss_threshold = get_long(j, "near_miss_threshold");
    spec.jobs = get_long(j, "jobs");
    return spec;
}

Json checkpoint_json(const SweepCheckpoint& ck) {
    return Json{{"cursor", ck.cursor ? json_longs(*ck.cursor) : Json()},
                {"spec", sweep_spec_json(ck.spec)}};
}

SweepCheckpoint checkpoint_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("spec"))
        throw malformed_error("checkpoint: expected an object with a 'spec' field");
    SweepCheckpoint ck;
    ck.spec = sweep_spec_from_json(j["spec"]);
    if (j.contains("cursor") && !j["cursor"].is_null()) {
        if (!j["cursor"].is_array()) throw malformed_error("checkpoint: cursor must be an array");
        SweepCursor cur;
        for (const Json& c : j["cursor"]) {
            if (!c.is_number_integer())
                throw malformed_error("checkpoint: non-integer cursor coordinate");
            cur.push_back(c.get<long>());
        }
        ck.cursor = std::move(cur);
    }
    return ck;
}

std::string canonical_line(const Json& j) { return j.dump(); }

std::string canonical_pretty(const Json& j) { return j.dump(2); }

std::string group_literal(const AbelianGroup& g) {
    if (g.factors().empty()) return "1";
    std::string out;
    for (size_t i = 0; i < g.factors().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(g.factors()[i]);
    }
    return out;
}

AbelianGroup parse_group_literal(const std::string& text) {
    std::vector<long> orders;
    for (const std::string& tok : split(text, ','))
        orders.push_back(parse_long(tok, "group literal"));
    return make_group(orders);
}

GroupElem parse_element_literal(const AbelianGroup& g, const std::string& text) {
    if (g.rank() == 0) {
        std::string t = strip(text);
        if (!t.empty() && t != "0")
            throw malformed_error("element literal: trivial group takes no coordinates");
        return g.zero();
    }
    std::vector<std::string> toks = split(text, ',');
    if (toks.size() != g.rank())
        throw malformed_error("element literal '" + text + "': expected " +
                              std::to_string(g.rank()) + " coordinates");
    GroupElem e = g.zero();
    for (size_t i = 0; i < toks.size(); ++i) {
        long f = g.factors()[i];
        long c = parse_long(toks[i], "element literal") % f;
        e[i] = c < 0 ? c + f : c;
    }
    return e;
}

std::string dset_line(const GroupRingElement& d) {
    const AbelianGroup& g = d.group();
    std::string out = "group=" + group_literal(g) + "; set=";
    bool first = true;
    for (long i = 0; i < g.order(); ++i) {
        if (d.coeff(i) == 0) continue;
        if (!first) out += ";";
        first = false;
        GroupElem e = g.element(i);
        for (size_t c = 0; c < e.size(); ++c) {
            if (c) out += ",";
            out += std::to_string(e[c]);
        }
        if (e.empty()) out += "0"; // trivial group: no coordinates, write a placeholder
    }
    return out;
}

GroupRingElement parse_dset_line(const std::string& line) {
    std::string s = strip(line);
    if (s.rfind("group=", 0) != 0) throw malformed_error("difference-set line must start with 'group='");
    size_t semi = s.find(';');
    if (semi == std::string::npos) throw malformed_error("difference-set line: missing '; set='");
    AbelianGroup g = parse_group_literal(s.substr(6, semi - 6));
    std::string rest = strip(s.substr(semi + 1));
    if (rest.rfind("set=", 0) != 0) throw malformed_error("difference-set line: missing 'set='");
    rest = rest.substr(4);

    std::vector<GroupElem> members;
    if (!strip(rest).empty())
        for (const std::string& tok : split(rest, ';'))
            members.push_back(parse_element_literal(g, strip(tok)));
    return GroupRingElement::subset(g, members);
}

std::string csv_header(const ConditionReport& rep) {
    std::string out = "kind";
    if (rep.kind == "odd-prime") {
        out += ",p,x,s,alpha,eta,gamma";
    } else if (rep.kind == "quad") {
        out += ",d,u1,u2,gamma";
    } else {
        out += ",p,d";
    }
    out += ",v,k,d1,fails,feasible";
    for (const ConditionItem& item : rep.ledgers.front().items) out += "," + item.id;
    return out;
}

std::vector<std::string> csv_rows(const ConditionReport& rep) {
    std::string prefix = rep.kind;
    if (rep.odd_prime) {
        prefix += "," + rep.odd_prime->p.get_str() + "," + std::to_string(rep.odd_prime->x) +
                  "," + std::to_string(rep.odd_prime->s) + "," + rep.odd_prime->alpha.get_str() +
                  "," + rep.odd_prime->eta.get_str() + "," + rep.odd_prime->gamma.get_str();
    } else if (rep.quad) {
        prefix += "," + std::to_string(rep.quad->d) + "," + rep.quad->u1.get_str() + "," +
                  rep.quad->u2.get_str() + "," + rep.quad->gamma.get_str();
    } else {
        prefix += "," + rep.p.get_str() + "," + std::to_string(rep.d);
    }
    prefix += "," + rep.v.get_str() + "," + rep.k.get_str();

    std::vector<std::string> rows;
    for (const D1Ledger& led : rep.ledgers) {
        std::string row = prefix + "," + std::to_string(led.d1) + "," +
                          std::to_string(led.fails) + "," + (rep.feasible ? "true" : "false");
        for (const ConditionItem& item : led.items) row += "," + std::string(verdict_name(item.verdict));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace diffset

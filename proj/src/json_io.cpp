#include "thinset/json_io.hpp"

#include <cmath>

namespace thinset::json_io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw schema_error(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) schema(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) schema(std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) schema(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::uint64_t u64(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_unsigned()) schema(std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

bool flag(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) schema(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

Rational rat(const json& j, const char* key) {
    try {
        return parse_rational(str(j, key));
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(std::string("field '") + key + "': " + e.what());
    }
}

Integer integer(const json& j, const char* key) {
    try {
        return parse_integer(str(j, key));
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(std::string("field '") + key + "': " + e.what());
    }
}

json trace_json(const std::vector<TracePoint>& t) {
    json a = json::array();
    for (auto& p : t) a.push_back(json::array({p.n, p.value}));
    return a;
}

} // namespace

json to_json(const ArithmeticSequence& s) {
    json j;
    if (s.kind() == ArithmeticSequence::Kind::factorial) {
        j["ratios"] = "factorial";
        return j;
    }
    j["ratios"] = s.ratios();
    j["cyclic"] = s.kind() == ArithmeticSequence::Kind::cyclic;
    return j;
}

ArithmeticSequence sequence_from_json(const json& j) {
    if (j.is_string()) {
        try {
            return ArithmeticSequence::parse(j.get<std::string>());
        } catch (const error& e) {
            schema(e.what());
        }
    }
    const json& r = field(j, "ratios");
    if (r.is_string()) {
        if (r.get<std::string>() != "factorial") schema("unknown ratio generator " + r.dump());
        return ArithmeticSequence::factorial();
    }
    if (!r.is_array()) schema("'ratios' must be an array or \"factorial\"");
    std::vector<std::uint64_t> q;
    for (auto& x : r) {
        if (!x.is_number_unsigned()) schema("ratios must be positive integers");
        q.push_back(x.get<std::uint64_t>());
    }
    try {
        return flag(j, "cyclic") ? ArithmeticSequence::cyclic(q) : ArithmeticSequence::finite(q);
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(e.what());
    }
}

json to_json(const DigitExpansion& e) {
    json j = to_json(e.sequence());
    json d = json::object();
    for (auto& [n, c] : e.nonzero_digits()) d[std::to_string(n)] = c.get_str();
    j["digits"] = d;
    j["depth"] = e.depth();
    j["finitely_supported"] = e.is_finitely_supported();
    if (e.symbolic_support()) j["support"] = to_json(*e.symbolic_support());
    return j;
}

DigitExpansion expansion_from_json(const json& j) {
    ArithmeticSequence seq = sequence_from_json(j);
    std::map<std::size_t, Integer> digits;
    const json& d = field(j, "digits");
    if (!d.is_object()) schema("'digits' must be an object");
    for (auto& [k, v] : d.items()) {
        if (!v.is_string()) schema("digit values must be strings");
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoull(k, &used);
            if (used != k.size() || idx == 0) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            schema("bad digit index '" + k + "'");
        }
        try {
            digits[idx] = parse_integer(v.get<std::string>());
        } catch (const error& e) {
            schema(e.what());
        }
    }
    std::size_t depth = u64(j, "depth");
    bool exact = j.contains("finitely_supported") ? flag(j, "finitely_supported") : false;
    try {
        DigitExpansion e = exact ? DigitExpansion::finitely_supported(seq, std::move(digits), depth)
                                 : DigitExpansion::truncated(seq, std::move(digits), depth);
        if (j.contains("support")) e = e.with_symbolic_support(set_from_json(j["support"]));
        return e;
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(e.what());
    }
}

json to_json(const SetDescriptor& s) {
    json j;
    if (auto f = s.as_finite()) {
        j["kind"] = "finite";
        j["elements"] = f->elements;
    } else if (auto p = s.as_progression()) {
        j["kind"] = "progression";
        j["start"] = p->start;
        j["step"] = p->step;
    } else if (auto g = s.as_geometric()) {
        j["kind"] = "geometric";
        j["base"] = g->base;
    } else if (auto sh = s.as_shifted()) {
        j["kind"] = "shifted";
        j["inner"] = to_json(sh->inner);
        j["offset"] = sh->offset;
    } else if (auto u = s.as_union()) {
        j["kind"] = "union";
        json parts = json::array();
        for (auto& p : u->parts) parts.push_back(to_json(p));
        j["parts"] = parts;
    } else if (auto e = s.as_enumerated()) {
        j["kind"] = "enumerated";
        j["formula"] = e->formula;
    }
    return j;
}

SetDescriptor set_from_json(const json& j) {
    std::string kind = str(j, "kind");
    try {
        if (kind == "finite") {
            std::vector<std::uint64_t> el;
            for (auto& x : field(j, "elements")) {
                if (!x.is_number_unsigned()) schema("set elements must be positive integers");
                el.push_back(x.get<std::uint64_t>());
            }
            return SetDescriptor::finite(el);
        }
        if (kind == "progression") return SetDescriptor::progression(u64(j, "start"), u64(j, "step"));
        if (kind == "geometric") return SetDescriptor::geometric(u64(j, "base"));
        if (kind == "shifted") {
            const json& off = field(j, "offset");
            if (!off.is_number_integer()) schema("'offset' must be an integer");
            return SetDescriptor::shifted(set_from_json(field(j, "inner")), off.get<std::int64_t>());
        }
        if (kind == "union") {
            std::vector<SetDescriptor> parts;
            for (auto& p : field(j, "parts")) parts.push_back(set_from_json(p));
            return SetDescriptor::set_union(parts);
        }
        if (kind == "enumerated") {
            std::string f = str(j, "formula");
            if (f.starts_with("poly:")) return SetDescriptor::powers_of_k(std::stoull(f.substr(5)));
            schema("enumerated set '" + f + "' has no catalog entry");
        }
    } catch (const schema_error&) {
        throw;
    } catch (const std::exception& e) {
        schema(std::string("bad set descriptor: ") + e.what());
    }
    schema("unknown set kind '" + kind + "'");
}

json to_json(const IdealDescriptor& i) {
    json j;
    switch (i.kind()) {
    case IdealDescriptor::Kind::fin: j["kind"] = "fin"; break;
    case IdealDescriptor::Kind::density: j["kind"] = "density"; break;
    case IdealDescriptor::Kind::summable:
        j["kind"] = "summable";
        j["exponent"] = to_wire(i.exponent());
        break;
    }
    return j;
}

IdealDescriptor ideal_from_json(const json& j) {
    try {
        if (j.is_string()) return IdealDescriptor::parse(j.get<std::string>());
        std::string kind = str(j, "kind");
        if (kind == "summable")
            return IdealDescriptor::summable(j.contains("exponent") ? rat(j, "exponent") : Rational(1));
        return IdealDescriptor::parse(kind);
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(e.what());
    }
}

json to_json(const Verdict& v) {
    json j;
    j["outcome"] = to_string(v.outcome);
    j["certificate"] = v.certificate;
    j["note"] = v.note;
    j["cutoff"] = v.cutoff;
    j["trace"] = trace_json(v.trace);
    return j;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    try {
        v.outcome = outcome_from_string(str(j, "outcome"));
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(e.what());
    }
    v.certificate = str(j, "certificate");
    v.note = str(j, "note");
    v.cutoff = u64(j, "cutoff");
    for (auto& p : field(j, "trace")) {
        if (!p.is_array() || p.size() != 2) schema("trace points are [n, value] pairs");
        v.trace.push_back({p[0].get<std::uint64_t>(), p[1].get<double>()});
    }
    return v;
}

json to_json(const RatInterval& r) { return json::array({to_wire(r.lo), to_wire(r.hi)}); }

RatInterval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        schema("interval must be [\"lo\", \"hi\"]");
    try {
        return RatInterval(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
    } catch (const error& e) {
        schema(std::string("bad interval: ") + e.what());
    }
}

json to_json(const ConvergenceReport& r) {
    json j;
    j["subject"] = r.subject;
    j["sequence"] = r.sequence;
    j["depth"] = r.depth;
    json per = json::array();
    for (auto& s : r.per_eps) {
        json e;
        e["eps"] = to_wire(s.eps);
        e["count"] = s.count;
        e["last_index"] = s.last_index;
        e["prefix_density"] = trace_json(s.prefix_density);
        e["indices"] = s.indices;
        e["periodic_density"] = s.periodic_density ? json(to_wire(*s.periodic_density)) : json(nullptr);
        per.push_back(e);
    }
    j["per_eps"] = per;
    j["verdict"] = to_json(r.verdict);
    return j;
}

json to_json(const SummabilityReport& r) {
    json j;
    j["weights"] = r.weights;
    j["checkpoints"] = r.checkpoints;
    json sums = json::array(), lo = json::array(), hi = json::array();
    for (auto& s : r.norm_sums) sums.push_back(to_json(s));
    for (auto& s : r.lower_envelope) lo.push_back(to_wire(s));
    for (auto& s : r.upper_envelope) hi.push_back(to_wire(s));
    j["norm_sums"] = sums;
    j["lower_envelope"] = lo;
    j["upper_envelope"] = hi;
    j["growth"] = to_string(r.growth);
    j["reason"] = r.reason;
    return j;
}

namespace {

json index_json(const PlannedIndex& p) {
    json j;
    j["i"] = p.i;
    j["n"] = p.n;
    j["k"] = p.k;
    j["v"] = p.v.get_str();
    j["q"] = p.q;
    j["l"] = p.choice.l;
    j["l_prime"] = p.choice.l_prime;
    j["m"] = p.choice.m;
    j["c"] = p.choice.c;
    j["digit"] = p.digit.get_str();
    return j;
}

PlannedIndex index_from_json(const json& j) {
    PlannedIndex p;
    p.i = u64(j, "i");
    p.n = u64(j, "n");
    p.k = u64(j, "k");
    p.v = integer(j, "v");
    p.q = u64(j, "q");
    p.choice.l = u64(j, "l");
    p.choice.l_prime = u64(j, "l_prime");
    p.choice.m = u64(j, "m");
    p.choice.c = u64(j, "c");
    p.digit = integer(j, "digit");
    return p;
}

} // namespace

json to_json(const WitnessPlan& p) {
    json j;
    j["theorem"] = to_string(p.theorem);
    j["sequence"] = to_json(p.seq);
    j["a"] = p.a.spec();
    j["ideal"] = to_json(p.ideal);
    j["weights"] = p.weights.spec();
    j["witness_set"] = p.witness_set ? to_json(*p.witness_set) : json(nullptr);
    json idx = json::array();
    for (auto& i : p.indices) idx.push_back(index_json(i));
    j["indices"] = idx;
    j["lookahead"] = p.lookahead ? index_json(*p.lookahead) : json(nullptr);
    j["growth_log"] = p.growth_log;
    return j;
}

WitnessPlan plan_from_json(const json& j) {
    WitnessPlan p;
    try {
        p.theorem = theorem_from_string(str(j, "theorem"));
        p.seq = sequence_from_json(field(j, "sequence"));
        p.a = IntegerSequence::parse(str(j, "a"), p.seq);
        p.ideal = ideal_from_json(field(j, "ideal"));
        p.weights = WeightRule::parse(str(j, "weights"));
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        schema(e.what());
    }
    if (const json& w = field(j, "witness_set"); !w.is_null()) p.witness_set = set_from_json(w);
    const json& idx = field(j, "indices");
    if (!idx.is_array()) schema("'indices' must be an array");
    for (auto& i : idx) p.indices.push_back(index_from_json(i));
    if (const json& l = field(j, "lookahead"); !l.is_null()) p.lookahead = index_from_json(l);
    for (auto& g : field(j, "growth_log")) {
        if (!g.is_string()) schema("growth log entries must be strings");
        p.growth_log.push_back(g.get<std::string>());
    }
    return p;
}

json to_json(const WitnessCertificate& c) {
    json j;
    j["theorem"] = to_string(c.plan.theorem);
    j["plan"] = to_json(c.plan);
    j["digits"] = to_json(c.expansion);
    json checks = json::array();
    for (auto& k : c.checks) {
        json e;
        e["i"] = k.i;
        e["interval"] = to_json(k.interval);
        e["target"] = to_json(k.target);
        e["strict"] = k.strict;
        e["wraps"] = k.wraps;
        e["tail_width"] = to_wire(k.tail_width);
        e["pass"] = k.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["support"] = to_json(c.support);
    j["support_verdict"] = to_json(c.support_verdict);
    json blocks = json::array();
    for (auto& b : c.blocks) {
        json e;
        e["i"] = b.i;
        e["first"] = b.first;
        e["last"] = b.last;
        e["sum_upper"] = to_wire(b.sum_upper);
        e["bound"] = to_wire(b.bound);
        e["exact"] = b.exact;
        e["pass"] = b.pass;
        blocks.push_back(e);
    }
    j["blocks"] = blocks;
    j["pass"] = c.pass;
    return j;
}

WitnessCertificate certificate_from_json(const json& j) {
    WitnessCertificate c;
    c.plan = plan_from_json(field(j, "plan"));
    if (str(j, "theorem") != to_string(c.plan.theorem)) schema("theorem tag disagrees with the plan");
    c.expansion = expansion_from_json(field(j, "digits"));
    const json& checks = field(j, "checks");
    if (!checks.is_array()) schema("'checks' must be an array");
    for (auto& e : checks) {
        IndexCheck k;
        k.i = u64(e, "i");
        k.interval = interval_from_json(field(e, "interval"));
        k.target = interval_from_json(field(e, "target"));
        k.strict = flag(e, "strict");
        k.wraps = flag(e, "wraps");
        k.tail_width = rat(e, "tail_width");
        k.pass = flag(e, "pass");
        c.checks.push_back(std::move(k));
    }
    c.support = set_from_json(field(j, "support"));
    c.support_verdict = verdict_from_json(field(j, "support_verdict"));
    const json& blocks = field(j, "blocks");
    if (!blocks.is_array()) schema("'blocks' must be an array");
    for (auto& e : blocks) {
        BlockCheck b;
        b.i = u64(e, "i");
        b.first = u64(e, "first");
        b.last = u64(e, "last");
        b.sum_upper = rat(e, "sum_upper");
        b.bound = rat(e, "bound");
        b.exact = flag(e, "exact");
        b.pass = flag(e, "pass");
        c.blocks.push_back(std::move(b));
    }
    c.pass = flag(j, "pass");
    return c;
}

json to_json(const VerifyReport& r) {
    json j;
    j["pass"] = r.pass;
    j["mismatches"] = r.mismatches;
    j["notes"] = r.notes;
    return j;
}

} // namespace thinset::json_io

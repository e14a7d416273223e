#include "thinset/cli.hpp"

#include "thinset/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace thinset::cli {

namespace {

using json_io::json;

struct usage_error : error {
    using error::error;
};

struct Options {
    std::string x;
    std::string seq = "dyadic";
    std::string a;
    std::string ideal;
    std::string set;
    std::string digits;
    std::string weights = "harmonic";
    std::string eps;
    std::string json_in;
    std::string out;
    std::string exec = "parallel";
    std::string theorem;
    std::uint64_t depth = 0;
    std::uint64_t count = 8;
    std::uint64_t scan_factor = 4;
};

std::uint64_t default_depth() {
    if (const char* env = std::getenv("THINSET_DEPTH"); env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || v == 0) throw usage_error(std::string("THINSET_DEPTH must be a positive integer, got '") + env + "'");
        return v;
    }
    return kDefaultCutoff;
}

std::uint64_t depth_of(const Options& o) { return o.depth ? o.depth : default_depth(); }

kernels::Exec exec_of(const Options& o) {
    if (o.exec == "serial") return kernels::Exec::serial;
    if (o.exec == "parallel") return kernels::Exec::parallel;
    throw usage_error("--exec must be serial or parallel");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw schema_error(path + ": " + e.what());
    }
}

// Inline JSON when it looks like JSON, otherwise a spec string.
json inline_or_spec(const std::string& text) {
    if (!text.empty() && (text.front() == '{' || text.front() == '[')) {
        try {
            return json::parse(text);
        } catch (const json::exception& e) {
            throw schema_error(std::string("inline JSON: ") + e.what());
        }
    }
    return json(text);
}

ArithmeticSequence sequence_of(const Options& o) {
    return ArithmeticSequence::parse(o.seq);
}

IdealDescriptor ideal_of(const Options& o) {
    if (o.ideal.empty()) throw usage_error("--ideal is required");
    return json_io::ideal_from_json(inline_or_spec(o.ideal));
}

IntegerSequence a_of(const Options& o) {
    if (o.a.empty()) throw usage_error("--a is required");
    return IntegerSequence::parse(o.a, sequence_of(o));
}

SetDescriptor set_of(const Options& o) {
    if (!o.json_in.empty()) return json_io::set_from_json(read_json_file(o.json_in));
    if (o.set.empty()) throw usage_error("--set or --json-in is required");
    return json_io::set_from_json(inline_or_spec(o.set));
}

ScanSubject subject_of(const Options& o) {
    if (!o.json_in.empty()) return json_io::expansion_from_json(read_json_file(o.json_in));
    if (o.x.empty()) throw usage_error("--x or --json-in is required");
    return CircleRational::parse(o.x);
}

int code_for(Outcome o) {
    switch (o) {
    case Outcome::member: return kExitPass;
    case Outcome::not_member: return kExitFail;
    case Outcome::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int code_for(Growth3 g) {
    switch (g) {
    case Growth3::bounded_evidence: return kExitPass;
    case Growth3::divergent_evidence: return kExitFail;
    case Growth3::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

struct Reply {
    std::string verdict;
    int code = kExitPass;
    json body = json::object();
};

Reply pass_fail(bool ok, json body) { return {ok ? "pass" : "fail", ok ? kExitPass : kExitFail, std::move(body)}; }

Reply do_expand(const Options& o) {
    CircleRational x = CircleRational::parse(o.x);
    std::uint64_t depth = depth_of(o);
    DigitExpansion e = expand(x, sequence_of(o), depth);
    json list = json::array();
    for (std::uint64_t n = 1; n <= depth; ++n) list.push_back(e.digit(n).get_str());
    json body;
    body["x"] = to_wire(x.value());
    body["digits"] = list;
    body["expansion"] = json_io::to_json(e);
    return pass_fail(true, body);
}

Reply do_reconstruct(const Options& o) {
    DigitExpansion e = [&] {
        if (!o.json_in.empty()) return json_io::expansion_from_json(read_json_file(o.json_in));
        if (o.digits.empty()) throw usage_error("--digits or --json-in is required");
        json d = inline_or_spec(o.digits);
        if (!d.is_array()) throw usage_error("--digits takes a list like [1,0,1]");
        std::map<std::size_t, Integer> m;
        for (std::size_t i = 0; i < d.size(); ++i) {
            Integer c = d[i].is_string() ? parse_integer(d[i].get<std::string>()) : Integer(d[i].dump());
            if (c != 0) m[i + 1] = c;
        }
        return DigitExpansion::finitely_supported(sequence_of(o), m, d.size());
    }();
    CircleRational x = reconstruct(e);
    json body;
    body["x"] = to_wire(x.value());
    if (!e.is_finitely_supported()) {
        RatInterval t = tail_bound(e.sequence(), e.depth());
        body["enclosure"] = json_io::to_json(RatInterval(x.value() + t.lo, x.value() + t.hi));
    }
    return pass_fail(true, body);
}

Reply do_density(const Options& o) {
    SetDescriptor s = set_of(o);
    std::uint64_t n = depth_of(o);
    json body;
    body["set"] = json_io::to_json(s);
    body["describe"] = s.describe();
    auto ex = exact_density(s);
    body["exact_density"] = ex ? json(to_wire(*ex)) : json(nullptr);
    try {
        DensityEstimate est = estimate_density(s, n);
        body["cutoff"] = est.cutoff;
        body["prefix_density"] = to_wire(prefix_density(s, n));
        body["window"] = json_io::to_json(RatInterval(est.lower, est.upper));
    } catch (const exhaustion_error& e) {
        body["cutoff"] = n;
        body["exhausted_after"] = e.partial_count;
    }
    return pass_fail(true, body);
}

Reply do_ideal_member(const Options& o) {
    SetDescriptor s = set_of(o);
    IdealDescriptor I = ideal_of(o);
    Verdict v = ideal_member(I, s, depth_of(o));
    json body;
    body["set"] = json_io::to_json(s);
    body["ideal"] = json_io::to_json(I);
    body["result"] = json_io::to_json(v);
    return {to_string(v.outcome), code_for(v.outcome), body};
}

Reply do_converge(const Options& o) {
    ScanSubject x = subject_of(o);
    IntegerSequence a = a_of(o);
    std::uint64_t depth = depth_of(o);
    ScanOptions so{exec_of(o)};
    json body;
    if (o.ideal.empty()) {
        std::vector<Rational> grid = default_eps_grid();
        if (!o.eps.empty()) grid = {parse_rational(o.eps)};
        ConvergenceReport r = classical_convergence(x, a, depth, grid, so);
        body["report"] = json_io::to_json(r);
        return {to_string(r.verdict.outcome), code_for(r.verdict.outcome), body};
    }
    IdealDescriptor I = ideal_of(o);
    Rational eps = o.eps.empty() ? Rational(1, 8) : parse_rational(o.eps);
    Verdict v = ideal_convergence(x, a, I, depth, eps, so);
    body["subject"] = x.describe();
    body["sequence"] = a.spec();
    body["ideal"] = json_io::to_json(I);
    body["eps"] = to_wire(eps);
    body["depth"] = depth;
    body["result"] = json_io::to_json(v);
    return {to_string(v.outcome), code_for(v.outcome), body};
}

Reply do_nset(const Options& o) {
    ScanSubject x = subject_of(o);
    IntegerSequence a = a_of(o);
    NsetOptions no;
    no.exec = exec_of(o);
    SummabilityReport r = nset_partial_sums(x, a, WeightRule::parse(o.weights), depth_of(o), no);
    json body;
    body["subject"] = x.describe();
    body["sequence"] = a.spec();
    body["report"] = json_io::to_json(r);
    return {to_string(r.growth), code_for(r.growth), body};
}

Reply do_witness(const Options& o) {
    Theorem t = theorem_from_string(o.theorem);
    WitnessPlan plan = plan_witness(t, sequence_of(o), a_of(o), ideal_of(o), o.count, PlanOptions{o.scan_factor});
    WitnessCertificate cert = build_and_verify(plan, VerifyOptions{exec_of(o)});
    return pass_fail(cert.pass, json_io::to_json(cert));
}

Reply do_verify(const Options& o) {
    if (o.json_in.empty()) throw usage_error("verify needs a certificate file (--json-in or positional)");
    WitnessCertificate cert = json_io::certificate_from_json(read_json_file(o.json_in));
    VerifyReport r = verify_certificate(cert, VerifyOptions{exec_of(o)});
    json body;
    body["theorem"] = to_string(cert.plan.theorem);
    body["report"] = json_io::to_json(r);
    return pass_fail(r.pass, body);
}

void emit(const Options& o, const std::string& command, const Reply& r, std::ostream& out, std::ostream& err) {
    json doc;
    doc["command"] = command;
    doc["verdict"] = r.verdict;
    doc["exit_code"] = r.code;
    for (auto& [k, v] : r.body.items())
        if (!doc.contains(k)) doc[k] = v;
    std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) {
        err << "thinset: cannot write " << o.out << ", writing to stdout\n";
        out << text;
        return;
    }
    f << text;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact digit expansions, ideal convergence and witness certificates", "thinset"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", o.out, "write the JSON document here instead of stdout");
    app.add_option("--exec", o.exec, "serial or parallel kernels")->capture_default_str();

    auto with_subject = [&](CLI::App* s) {
        s->add_option("--x", o.x, "rational point p/q in [0,1)");
        s->add_option("--json-in", o.json_in, "digit expansion JSON");
        s->add_option("--a", o.a, "sequence a_n: c*b^n, b^n, n!, u_n");
        s->add_option("--seq", o.seq, "arithmetic sequence (for a = u_n)")->capture_default_str();
        s->add_option("--depth", o.depth, "scan depth (default THINSET_DEPTH or 100000)")->check(CLI::PositiveNumber);
    };

    auto* expand_cmd = app.add_subcommand("expand", "canonical digits of a rational");
    expand_cmd->add_option("--x", o.x, "rational p/q in [0,1)")->required();
    expand_cmd->add_option("--seq", o.seq, "arithmetic sequence")->capture_default_str();
    expand_cmd->add_option("--depth", o.depth, "number of digits")->check(CLI::PositiveNumber);

    auto* recon_cmd = app.add_subcommand("reconstruct", "partial sum of a digit expansion");
    recon_cmd->add_option("--digits", o.digits, "digit list [c1,c2,...]");
    recon_cmd->add_option("--seq", o.seq, "arithmetic sequence")->capture_default_str();
    recon_cmd->add_option("--json-in", o.json_in, "digit expansion JSON");

    auto* density_cmd = app.add_subcommand("density", "density of a set descriptor");
    density_cmd->add_option("--set", o.set, "set descriptor JSON");
    density_cmd->add_option("--json-in", o.json_in, "set descriptor file");
    density_cmd->add_option("--depth,--cutoff", o.depth, "prefix cutoff")->check(CLI::PositiveNumber);

    auto* member_cmd = app.add_subcommand("ideal-member", "membership of a set in an ideal");
    member_cmd->add_option("--set", o.set, "set descriptor JSON");
    member_cmd->add_option("--json-in", o.json_in, "set descriptor file");
    member_cmd->add_option("--ideal", o.ideal, "fin, density, summable[:s] or JSON")->required();
    member_cmd->add_option("--depth,--cutoff", o.depth, "prefix cutoff")->check(CLI::PositiveNumber);

    auto* converge_cmd = app.add_subcommand("converge", "(ideal) convergence of ||a_n x|| to 0");
    with_subject(converge_cmd);
    converge_cmd->add_option("--ideal", o.ideal, "ideal; omit for the classical report");
    converge_cmd->add_option("--eps", o.eps, "threshold (default 1/8 with --ideal)");

    auto* nset_cmd = app.add_subcommand("nset", "partial sums of r_n ||a_n x||");
    with_subject(nset_cmd);
    nset_cmd->add_option("--weights", o.weights, "one, harmonic, inverse-square or [r1,...]")->capture_default_str();

    auto* witness_cmd = app.add_subcommand("witness", "build and verify a witness certificate");
    witness_cmd->add_option("theorem", o.theorem, "th6, th1 or th2")->required()->check(CLI::IsMember({"th6", "th1", "th2"}));
    witness_cmd->add_option("--seq", o.seq, "arithmetic sequence u_n")->capture_default_str();
    witness_cmd->add_option("--a", o.a, "sequence a_n")->required();
    witness_cmd->add_option("--ideal", o.ideal, "ideal")->required();
    witness_cmd->add_option("--count", o.count, "number of planned indices")->capture_default_str();
    witness_cmd->add_option("--scan-factor", o.scan_factor, "scan window multiplier")->capture_default_str()->check(CLI::PositiveNumber);

    auto* verify_cmd = app.add_subcommand("verify", "re-verify a certificate file");
    verify_cmd->add_option("file,--json-in", o.json_in, "certificate JSON");

    std::string command = args.empty() ? "" : args.front();
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "thinset: " << e.what() << "\n";
        emit(o, command, {"usage-error", kExitUsage, json{{"error", e.what()}}}, out, err);
        return kExitUsage;
    }
    command = app.get_subcommands().front()->get_name();

    Reply r;
    try {
        if (command == "expand") r = do_expand(o);
        else if (command == "reconstruct") r = do_reconstruct(o);
        else if (command == "density") r = do_density(o);
        else if (command == "ideal-member") r = do_ideal_member(o);
        else if (command == "converge") r = do_converge(o);
        else if (command == "nset") r = do_nset(o);
        else if (command == "witness") r = do_witness(o);
        else r = do_verify(o);
    } catch (const unsupported_ideal& e) {
        err << "thinset: " << e.what() << "\n";
        r = {"fail", kExitFail, json{{"error", "unsupported-ideal"}, {"message", e.what()}}};
    } catch (const not_absorbing& e) {
        err << "thinset: " << e.what() << "\n";
        r = {"fail", kExitFail, json{{"error", "sequence-not-absorbing"}, {"message", e.what()}}};
    } catch (const error& e) {
        // Bad specs, schema problems and violated preconditions are all usage errors here.
        err << "thinset: " << e.what() << "\n";
        r = {"usage-error", kExitUsage, json{{"error", e.what()}}};
    }
    emit(o, command, r, out, err);
    return r.code;
}

} // namespace thinset::cli

#include "hyperpart/config.hpp"
#include "hyperpart/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace hyperpart {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& ctx,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw ValidationError("config: " + ctx + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw ValidationError("config: unknown key \"" + it.key() + "\" in " + ctx);
    }
}

const json& need(const json& obj, const std::string& ctx, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError("config: " + ctx + " is missing \"" + key + "\"");
    return *it;
}

double as_double(const json& v, const std::string& ctx) {
    if (!v.is_number())
        throw ValidationError("config: " + ctx + " must be a number");
    return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& ctx) {
    if (!v.is_number_integer())
        throw ValidationError("config: " + ctx + " must be an integer");
    return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& ctx) {
    if (!v.is_string())
        throw ValidationError("config: " + ctx + " must be a string");
    return v.get<std::string>();
}

std::vector<std::complex<double>> as_coeffs(const json& v, const std::string& ctx) {
    if (!v.is_array())
        throw ValidationError("config: " + ctx + " must be an array");
    std::vector<std::complex<double>> out;
    for (const auto& e : v) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                   e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw ValidationError("config: " + ctx +
                                  " entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

PartitionConfig parse_pconfig(const json& root) {
    const std::string mode = as_string(need(root, "document", "mode"), "mode");
    const json& sector = need(root, "document", "sector");
    require_keys(sector, "sector", {"r0", "R0", "theta0", "thetaT"});
    const double r0 = as_double(need(sector, "sector", "r0"), "sector.r0");
    const double R0 = as_double(need(sector, "sector", "R0"), "sector.R0");
    const double th0 = as_double(need(sector, "sector", "theta0"), "sector.theta0");
    const double thT = as_double(need(sector, "sector", "thetaT"), "sector.thetaT");

    const json& cons = need(root, "document", "constants");
    if (mode == "free") {
        require_keys(cons, "constants", {"c2", "c4"});
        return PartitionConfig::free_constants(
            r0, R0, th0, thT, as_double(need(cons, "constants", "c2"), "constants.c2"),
            as_double(need(cons, "constants", "c4"), "constants.c4"));
    }
    if (mode == "derived") {
        require_keys(cons, "constants", {"delta0", "R1"});
        return PartitionConfig::derived_constants(
            r0, R0, th0, thT,
            as_double(need(cons, "constants", "delta0"), "constants.delta0"),
            as_double(need(cons, "constants", "R1"), "constants.R1"));
    }
    throw ValidationError("config: mode must be \"free\" or \"derived\"");
}

SequenceSpec parse_sequence(const json& v) {
    SequenceSpec s;
    const std::string kind = as_string(need(v, "sequence", "kind"), "sequence.kind");
    if (kind == "arithmetic") {
        require_keys(v, "sequence", {"kind", "alpha", "beta"});
        s.kind = SeqKind::Arithmetic;
        s.alpha = as_double(need(v, "sequence", "alpha"), "sequence.alpha");
        s.beta = as_double(need(v, "sequence", "beta"), "sequence.beta");
    } else if (kind == "prop61") {
        require_keys(v, "sequence", {"kind", "M0", "cap"});
        s.kind = SeqKind::Prop61;
        // doubles like 2.5 or 3 convert to exact rationals
        s.M0 = Rational(as_double(need(v, "sequence", "M0"), "sequence.M0"));
        s.cap = as_int(need(v, "sequence", "cap"), "sequence.cap");
    } else if (kind == "explicit") {
        require_keys(v, "sequence", {"kind", "values"});
        s.kind = SeqKind::Explicit;
        s.terms = as_coeffs(need(v, "sequence", "values"), "sequence.values");
    } else {
        throw ValidationError(
            "config: sequence.kind must be arithmetic, prop61, or explicit");
    }
    return s;
}

Truncation parse_truncation(const json& v) {
    require_keys(v, "truncation",
                 {"max_levels", "max_points_per_level", "theta_window"});
    Truncation t;
    if (v.contains("max_levels"))
        t.max_levels = as_int(v["max_levels"], "truncation.max_levels");
    if (v.contains("max_points_per_level"))
        t.max_points_per_level =
            as_int(v["max_points_per_level"], "truncation.max_points_per_level");
    if (v.contains("theta_window")) {
        const json& w = v["theta_window"];
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw ValidationError("config: truncation.theta_window must be [lo, hi]");
        t.theta_window = std::make_pair(w[0].get<double>(), w[1].get<double>());
    }
    return t;
}

TargetSpec parse_target(const json& v) {
    require_keys(v, "target",
                 {"p", "g", "s1", "k1", "C_radius", "eps0", "R1", "delta0"});
    TargetSpec t;
    t.p = Polynomial::monomial(as_coeffs(need(v, "target", "p"), "target.p"));
    if (v.contains("g")) t.g = Polynomial::monomial(as_coeffs(v["g"], "target.g"));
    t.s1 = as_int(need(v, "target", "s1"), "target.s1");
    t.k1 = as_double(need(v, "target", "k1"), "target.k1");
    if (v.contains("C_radius"))
        t.C_radius = as_double(v["C_radius"], "target.C_radius");
    t.eps0 = as_double(need(v, "target", "eps0"), "target.eps0");
    t.R1 = as_double(need(v, "target", "R1"), "target.R1");
    const json& d0 = need(v, "target", "delta0");
    if (d0.is_string()) {
        if (d0.get<std::string>() != "auto")
            throw ValidationError("config: target.delta0 must be a number or \"auto\"");
        t.delta0 = continuity_delta(t.p, t.R1, t.s1);
    } else {
        t.delta0 = as_double(d0, "target.delta0");
    }
    t.validate();
    return t;
}

FitOptions parse_fit(const json& v) {
    require_keys(v, "fit", {"degree", "samples_per_disk", "precision", "rcond"});
    FitOptions f;
    if (v.contains("degree")) f.degree = as_int(v["degree"], "fit.degree");
    if (v.contains("samples_per_disk"))
        f.samples_per_disk = as_int(v["samples_per_disk"], "fit.samples_per_disk");
    if (v.contains("precision")) {
        const std::string p = as_string(v["precision"], "fit.precision");
        if (p == "double")
            f.precision = Precision::Double;
        else if (p == "extended")
            f.precision = Precision::Extended;
        else
            throw ValidationError("config: fit.precision must be double or extended");
    }
    if (v.contains("rcond")) f.rcond = as_double(v["rcond"], "fit.rcond");
    return f;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: JSON parse failure: ") + e.what());
    }
    require_keys(root, "document",
                 {"mode", "sector", "constants", "sequence", "witness", "truncation",
                  "ladder_budget", "covering_samples", "target", "fit", "grid",
                  "seed", "exec", "sequence_prefix", "out"});

    RunConfig rc;
    rc.pconfig = parse_pconfig(root);
    rc.sequence = parse_sequence(need(root, "document", "sequence"));

    if (root.contains("witness")) {
        const json& w = root["witness"];
        require_keys(w, "witness", {"gap"});
        const json& gap = need(w, "witness", "gap");
        if (gap.is_string()) {
            if (gap.get<std::string>() != "auto")
                throw ValidationError("config: witness.gap must be a number or \"auto\"");
        } else {
            rc.witness_gap = as_double(gap, "witness.gap");
        }
    }
    if (root.contains("truncation"))
        rc.truncation = parse_truncation(root["truncation"]);
    if (root.contains("ladder_budget")) {
        rc.ladder_budget = as_int(root["ladder_budget"], "ladder_budget");
        if (rc.ladder_budget < 1)
            throw ValidationError("config: ladder_budget must be positive");
    }
    if (root.contains("covering_samples")) {
        rc.covering_samples = as_int(root["covering_samples"], "covering_samples");
        if (rc.covering_samples < 0)
            throw ValidationError("config: covering_samples must be >= 0");
    }
    if (root.contains("target")) rc.target = parse_target(root["target"]);
    if (root.contains("fit")) rc.fit = parse_fit(root["fit"]);
    if (root.contains("grid")) {
        const json& g = root["grid"];
        require_keys(g, "grid", {"nr", "ntheta", "zsamples", "sup_multiplier"});
        if (g.contains("nr")) rc.grid_nr = as_int(g["nr"], "grid.nr");
        if (g.contains("ntheta")) rc.grid_ntheta = as_int(g["ntheta"], "grid.ntheta");
        if (g.contains("zsamples"))
            rc.zsamples = as_int(g["zsamples"], "grid.zsamples");
        if (g.contains("sup_multiplier"))
            rc.sup_multiplier = as_int(g["sup_multiplier"], "grid.sup_multiplier");
    }
    if (root.contains("seed")) {
        const std::int64_t s = as_int(root["seed"], "seed");
        rc.seed = static_cast<std::uint64_t>(s);
    }
    if (root.contains("exec")) {
        const std::string e = as_string(root["exec"], "exec");
        if (e == "serial")
            rc.exec = ExecMode::Serial;
        else if (e == "parallel")
            rc.exec = ExecMode::Parallel;
        else
            throw ValidationError("config: exec must be serial or parallel");
    }
    if (root.contains("sequence_prefix")) {
        rc.sequence_prefix = as_int(root["sequence_prefix"], "sequence_prefix");
        if (rc.sequence_prefix < 1)
            throw ValidationError("config: sequence_prefix must be positive");
    }
    if (root.contains("out")) rc.out = as_string(root["out"], "out");
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::shared_ptr<ComplexSequence> RunConfig::make_sequence() const {
    switch (sequence.kind) {
        case SeqKind::Arithmetic:
            return std::make_shared<ComplexSequence>(
                ComplexSequence::arithmetic(sequence.alpha, sequence.beta));
        case SeqKind::Prop61:
            return std::make_shared<ComplexSequence>(
                ComplexSequence::prop61(Prop61Params{sequence.M0, sequence.cap}));
        case SeqKind::Explicit:
            return std::make_shared<ComplexSequence>(
                ComplexSequence::explicit_list(sequence.terms));
    }
    throw ValidationError("config: unreachable sequence kind");
}

MuView RunConfig::make_witness(std::shared_ptr<const ComplexSequence> src) const {
    return MuView::lazy(std::move(src), effective_gap());
}

} // namespace hyperpart

#include "loopforge/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace loopforge {

std::string complex_str(const Complex& z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

std::string read_text_or_inline(const std::string& arg) {
    std::error_code ec;
    if (!arg.empty() && arg.front() != '{' && arg.front() != '[' && std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

AlgebraPtr algebra_field(const json& j, const AlgebraPtr& hint) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (hint && hint->name() == name) return hint;
        return load_algebra(name);
    }
    if (j.is_object()) {
        AlgebraPtr g = algebra_from_json(j);
        if (hint && hint->name() == g->name()) return hint;
        return g;
    }
    throw ValidationError("\"algebra\" must be a name or a descriptor object");
}

namespace {

Gaussian exact_coeff(const json& v) {
    if (v.is_string()) return parse_gaussian(v.get<std::string>());
    if (v.is_number_integer()) return Gaussian(v.get<long>());
    throw ValidationError("exact coefficient must be a string or an integer");
}

Complex numeric_coeff(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    if (v.is_string()) return parse_gaussian(v.get<std::string>()).to_complex();
    throw ValidationError("coefficient must be a number, [re, im] or an exact string");
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw ValidationError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

}  // namespace

Realization parse_realization(const std::string& s) {
    if (s == "frequency" || s == "freq" || s == "bandlimited") return Realization::Frequency;
    if (s == "modes" || s == "mode" || s == "laurent") return Realization::Modes;
    if (s == "time") return Realization::Time;
    throw ValidationError("unknown realization '" + s + "' (frequency|bandlimited, modes|laurent, time)");
}

ParsedElement element_from_json(const json& j, const AlgebraPtr& hint) {
    ParsedElement out;
    out.realization = parse_realization(field(j, "realization").get<std::string>());
    AlgebraPtr g = algebra_field(field(j, "algebra"), hint);
    const json& support = field(j, "support");
    if (!support.is_array()) throw ValidationError("\"support\" must be an array");
    auto coeffs = [&](const json& entry) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() || !entry[1].is_array())
            throw ValidationError("support entries are [index, [coefficients...]]");
        if (static_cast<int>(entry[1].size()) != g->dim())
            throw DimensionError("coefficient list of length " + std::to_string(entry[1].size()) + " for " + g->name());
        return entry[0].get<int>();
    };
    switch (out.realization) {
        case Realization::Modes: {
            LaurentElement xi(g);
            for (const auto& e : support) {
                const int k = coeffs(e);
                ExactVec v;
                for (const auto& c : e[1]) v.push_back(exact_coeff(c));
                xi.add(k, v);
            }
            out.laurent = std::move(xi);
            break;
        }
        case Realization::Frequency: {
            const Rational dp = parse_rational(field(j, "dp").is_string() ? j.at("dp").get<std::string>()
                                                                          : std::to_string(j.at("dp").get<long>()));
            if (sgn(dp) <= 0) throw ValidationError("grid spacing must be positive");
            BandLimitedElement xi(g, dp);
            for (const auto& e : support) {
                const int k = coeffs(e);
                Vec<Complex> v;
                for (const auto& c : e[1]) v.push_back(numeric_coeff(c));
                xi.add(k, v);
            }
            out.band = std::move(xi);
            break;
        }
        case Realization::Time:
            throw ValidationError("time-realization elements are not accepted as JSON input");
    }
    return out;
}

json to_json(const LaurentElement& xi) {
    json support = json::array();
    for (const auto& [k, v] : xi.modes()) {
        json cs = json::array();
        for (const auto& c : v) cs.push_back(c.str());
        support.push_back(json::array({k, cs}));
    }
    return {{"realization", "modes"}, {"algebra", xi.algebra()->name()}, {"support", support}};
}

json to_json(const BandLimitedElement& xi) {
    json support = json::array();
    for (const auto& [k, v] : xi.samples()) {
        json cs = json::array();
        for (const auto& c : v) cs.push_back(json::array({c.real(), c.imag()}));
        support.push_back(json::array({k, cs}));
    }
    return {{"realization", "frequency"},
            {"algebra", xi.algebra()->name()},
            {"dp", rational_str(xi.dp_exact())},
            {"support", support}};
}

CocycleCandidate candidate_from_json(const json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "canonical") return CocycleCandidate::canonical();
    if (kind == "scaled") return CocycleCandidate::scaled(exact_coeff(field(j, "c")));
    if (kind == "kernel") {
        std::vector<Gaussian> coeffs;
        for (const auto& c : field(j, "kernel")) coeffs.push_back(exact_coeff(c));
        return CocycleCandidate::polynomial(std::move(coeffs), j.value("label", std::string("kernel")));
    }
    throw ValidationError("unknown candidate kind '" + kind + "'");
}

json to_json(const CocycleCandidate& c) {
    json j{{"kind", c.kind == CocycleCandidate::Kind::Canonical ? "canonical"
                    : c.kind == CocycleCandidate::Kind::Scaled  ? "scaled"
                                                                : "kernel"},
           {"label", c.label}};
    if (c.kind == CocycleCandidate::Kind::Scaled) j["c"] = c.c.str();
    if (c.kind == CocycleCandidate::Kind::Kernel) {
        json k = json::array();
        for (const auto& x : c.kernel) k.push_back(x.str());
        j["kernel"] = k;
    }
    return j;
}

CocycleCandidate parse_candidate(const std::string& text) {
    if (text == "canonical") return CocycleCandidate::canonical();
    if (text.rfind("scaled:", 0) == 0) return CocycleCandidate::scaled(parse_gaussian(text.substr(7)));
    if (text.rfind("kernel:", 0) == 0) {
        std::vector<Gaussian> coeffs;
        std::stringstream ss(text.substr(7));
        std::string tok;
        while (std::getline(ss, tok, ',')) coeffs.push_back(parse_gaussian(tok));
        return CocycleCandidate::polynomial(std::move(coeffs));
    }
    const std::string body = read_text_or_inline(text);
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw ValidationError("candidate is neither a known form nor valid JSON: " + std::string(e.what()));
    }
    return candidate_from_json(j);
}

json to_json(const CocycleReport& r) {
    json checks = json::array();
    for (const CheckResult* c : r.checks())
        checks.push_back({{"name", c->name}, {"ok", c->ok}, {"max_residual", c->max_residual}, {"probes", c->probes}});
    return {{"candidate", r.candidate},
            {"algebra", r.algebra},
            {"realization", to_string(r.realization)},
            {"exact", r.exact},
            {"checks", checks},
            {"all_ok", r.all_ok()}};
}

json to_json(const ClassifyResult& r) {
    return {{"proportional", r.proportional},
            {"level", {r.level.real(), r.level.imag()}},
            {"residual", r.residual},
            {"scale", r.scale},
            {"probe_attempts", r.probe_attempts}};
}

json to_json(const InductionResult& r) {
    return {{"max_residual", r.max_residual},
            {"gamma_e0", {r.gamma_e0.real(), r.gamma_e0.imag()}},
            {"residuals", r.residuals}};
}

json to_json(const Admissibility& a) {
    json j{{"admissible", a.admissible}};
    if (!a.admissible) j["witness"] = a.witness;
    if (!a.root.empty()) j["root"] = a.root;
    return j;
}

json module_to_json(const VacuumModule& m) {
    json gram = json::array();
    for (int d = 0; d <= m.cutoff(); ++d) {
        json block = json::array();
        for (const auto& row : m.gram(d)) {
            json r = json::array();
            for (const auto& x : row) r.push_back(x.str());
            block.push_back(r);
        }
        gram.push_back(block);
    }
    json lambda = json::array();
    for (const auto& x : m.weight().lambda_h) lambda.push_back(x.str());
    const auto& g = *m.algebra();
    const bool builtin = g.name().size() > 2 && g.name().rfind("sl", 0) == 0 &&
                         g.name().find_first_not_of("0123456789", 2) == std::string::npos;
    return {{"algebra", builtin ? json(g.name()) : algebra_to_json(g)},
            {"level", m.level().str()},
            {"cutoff", m.cutoff()},
            {"lambda_h", lambda},
            {"basis", m.labels()},
            {"gram", gram}};
}

VacuumModule module_from_json(const json& j) {
    AlgebraPtr g = algebra_field(field(j, "algebra"));
    AffineWeight w = AffineWeight::vacuum(g, exact_coeff(field(j, "level")));
    if (j.contains("lambda_h")) {
        w.lambda_h.clear();
        for (const auto& x : j.at("lambda_h")) w.lambda_h.push_back(exact_coeff(x));
    }
    const int cutoff = field(j, "cutoff").get<int>();
    VacuumModule m = VacuumModule::build(w, cutoff);
    if (j.contains("gram")) {
        std::vector<ExactMatrix> blocks;
        for (const auto& b : j.at("gram")) {
            ExactMatrix mat;
            for (const auto& row : b) {
                ExactVec r;
                for (const auto& x : row) r.push_back(exact_coeff(x));
                mat.push_back(std::move(r));
            }
            blocks.push_back(std::move(mat));
        }
        m.set_gram(std::move(blocks));
    }
    return m;
}

std::string gram_csv(const VacuumModule& m) {
    std::string out = "grade,row,col,row_label,col_label,value\n";
    for (int d = 0; d <= m.cutoff(); ++d) {
        const auto [first, n] = m.grade_range(d);
        const auto& g = m.gram(d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out += std::to_string(d) + "," + std::to_string(i) + "," + std::to_string(j) + "," + m.label(first + i) +
                       "," + m.label(first + j) + "," + g[i][j].str() + "\n";
    }
    return out;
}

json to_json(const UnitarityVerdict& v) {
    json j{{"psd", v.psd},
           {"checked_up_to", v.checked_up_to},
           {"grade_ranks", v.grade_ranks},
           {"admissibility", to_json(v.admissibility)},
           {"consistent_with_criterion", v.consistent}};
    if (v.negative_grade) {
        json coeffs = json::object();
        for (std::size_t i = 0; i < v.negative_vector.size(); ++i)
            if (!v.negative_vector[i].is_zero()) coeffs[v.vector_labels[i]] = v.negative_vector[i].str();
        j["negative_vector"] = {{"grade", *v.negative_grade}, {"coefficients", coeffs}, {"norm_squared", rational_str(v.negative_value)}};
    }
    return j;
}

}  // namespace loopforge

// iterstbc: build and analyze fast-decodable space-time block codes from
// iterated algebras over cyclotomic towers. Exact arithmetic everywhere a
// structural claim is made; JSON/CSV out.
//
// exit codes: 0 success, 1 validation failure, 2 internal inconsistency

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "iterstbc/certificates.hpp"
#include "iterstbc/channel_sim.hpp"
#include "iterstbc/codebook.hpp"
#include "iterstbc/decodability.hpp"
#include "iterstbc/format.hpp"
#include "iterstbc/version.hpp"

using nlohmann::json;
using namespace iterstbc;

namespace {

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text << "\n";
}

json provenance(const json& inputs) {
    return json{{"tool", "iterstbc"},
                {"version", kVersion},
                {"input", inputs},
                {"input_digest", input_digest(inputs.dump())}};
}

json element_json(const CycloElement& a) {
    json coeffs = json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(rat_to_string(c));
    return json{{"conductor", a.field()->conductor()}, {"coeffs", coeffs}};
}

json d_element_json(const DElement& x) {
    json coords = json::array();
    for (const auto& c : x.coords()) coords.push_back(element_json(c));
    return coords;
}

json matrix_json(const KMatrix& m, bool with_complex) {
    json rows = json::array();
    for (unsigned r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (unsigned c = 0; c < m.cols(); ++c) {
            json cell = element_json(m.at(r, c));
            if (with_complex) {
                auto z = embed(m.at(r, c));
                cell["re"] = z.real();
                cell["im"] = z.imag();
            }
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

IterVariant variant_from_name(const std::string& name) {
    if (name == "left") return IterVariant::Left;
    if (name == "middle") return IterVariant::Middle;
    if (name == "right") return IterVariant::Right;
    throw CLI::ValidationError("--variant must be left, middle or right");
}

// d given as a JSON array of K-coordinates, one coefficient vector per
// power of e, rationals as strings: e.g. [["0","1"],["0","0"]].
DElement parse_d(const AlgebraPtr& D, const std::string& text) {
    json j = json::parse(text);
    if (!j.is_array() || j.size() != D->m())
        throw std::runtime_error("d must list m coordinate vectors");
    std::vector<CycloElement> coords;
    for (const auto& cj : j) {
        std::vector<Rational> coeffs;
        for (const auto& s : cj) coeffs.push_back(rat_from_string(s.get<std::string>()));
        coords.emplace_back(D->field(), std::move(coeffs));
    }
    return D->element(std::move(coords));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct AlgebraChoice {
    IterPtr algebra;
    std::string id;
    std::optional<CodeSpec> spec;  // when a preset was named
};

AlgebraChoice resolve_algebra(const std::string& preset, const std::string& config_path,
                              const std::string& variant, const std::string& d_text) {
    if (!preset.empty() && !config_path.empty())
        throw std::runtime_error("--preset and --config are mutually exclusive");
    if (!preset.empty()) {
        CodeSpec spec = code_by_name(preset);
        return {spec.algebra, preset, spec};
    }
    if (config_path.empty())
        throw std::runtime_error("either --preset or --config is required");
    TowerSpec tower = tower_from_json(read_file(config_path));
    auto D = CyclicAlgebra::create(tower, -tower.ambient()->one());
    DElement d = parse_d(D, d_text);
    auto A = IteratedAlgebra::create(D, tower.n(), d, variant_from_name(variant));
    return {A, "config:" + config_path + ":" + variant, std::nullopt};
}

json verdict_json(const Verdict& v) {
    return json{{"kind", verdict_kind_name(v.kind)}, {"detail", v.detail}};
}

int cmd_tower(const std::string& preset, const std::string& config, const std::string& out) {
    json inputs{{"subcommand", "tower"}, {"preset", preset}, {"config", config}};
    if (preset.empty() && config.empty())
        throw std::runtime_error("either --preset or --config is required");
    if (!preset.empty() && preset != "6x3" && preset != "8x4")
        throw std::runtime_error("unknown tower preset: " + preset);
    TowerSpec t = preset.empty() ? tower_from_json(read_file(config))
                                 : (preset == "6x3" ? tower_6x3() : tower_8x4());
    std::string serialized = tower_to_json(t);
    // round-trip check: the emitted config reloads to an identical tower
    TowerSpec reloaded = tower_from_json(serialized);
    if (tower_to_json(reloaded) != serialized) throw std::runtime_error("tower round-trip failed");
    json j = provenance(inputs);
    j["tower"] = json::parse(serialized);
    write_output(out, j.dump(2));
    return 0;
}

int cmd_certify(const AlgebraChoice& choice, long box, const std::string& out) {
    json inputs{{"subcommand", "certify"}, {"algebra", choice.id}, {"box", box}};
    CertificateReport report = certify(choice.algebra, box, choice.id);
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back(json{{"certificate", e.name},
                               {"verdict", verdict_json(e.verdict)},
                               {"criterion", e.criterion}});
    json j = provenance(inputs);
    j["algebra"] = choice.id;
    j["variant"] = variant_name(choice.algebra->variant());
    j["d"] = d_element_json(choice.algebra->d());
    j["entries"] = entries;
    j["inconsistent"] = report.inconsistent;
    if (report.inconsistent) j["inconsistency_detail"] = report.inconsistency_detail;
    write_output(out, j.dump(2));
    if (report.inconsistent) {
        std::cerr << "FATAL: " << report.inconsistency_detail << "\n";
        return 2;
    }
    return 0;
}

int cmd_codebook(const std::string& preset, const std::string& constellation_name,
                 unsigned long sample, uint64_t seed, unsigned layers, const std::string& emit) {
    json inputs{{"subcommand", "codebook"}, {"preset", preset},
                {"constellation", constellation_name}, {"sample", sample},
                {"seed", seed},           {"layers", layers}};
    CodeSpec spec = code_by_name(preset);
    Constellation constellation = Constellation::by_name(constellation_name);
    json words = json::array();
    for (unsigned long s = 0; s < sample; ++s) {
        auto symbols = random_symbols(spec, constellation, seed, s, layers);
        Codeword w = encode(spec, constellation, symbols);
        DetInfo det = exact_det(spec, w);
        json sym = json::array();
        for (const auto& p : symbols) sym.push_back(json::array({p.first, p.second}));
        json wj{{"symbols", sym},
                {"matrix", matrix_json(w.exact_matrix, true)},
                {"det", element_json(det.det)},
                {"det_in_F", det.in_F},
                {"det_in_L", det.in_L}};
        if (det.abs_sq) wj["det_abs_sq"] = rat_to_string(*det.abs_sq);
        words.push_back(std::move(wj));
    }
    json j = provenance(inputs);
    j["preset"] = preset;
    j["constellation"] = constellation.name();
    j["average_energy"] = rat_to_string(constellation.average_energy);
    j["codewords"] = words;
    write_output(emit, j.dump(2));
    return 0;
}

int cmd_mindet(const std::string& preset, const std::string& constellation_name,
               unsigned long sample, uint64_t seed, unsigned layers, bool exhaustive,
               const std::string& out) {
    json inputs{{"subcommand", "mindet"},  {"preset", preset},
                {"constellation", constellation_name}, {"sample", sample},
                {"seed", seed},            {"layers", layers},
                {"exhaustive", exhaustive}};
    CodeSpec spec = code_by_name(preset);
    Constellation constellation = Constellation::by_name(constellation_name);
    MinDetStats stats = exhaustive ? min_det_exhaustive_one_layer(spec, constellation)
                                   : min_det_survey(spec, constellation, sample, seed, layers);
    std::ostringstream csv;
    csv << "# " << provenance(inputs).dump() << "\n";
    csv << "preset,constellation,samples,nonzero,zero_dets,min_abs_sq,normalized_min,seed\n";
    csv << preset << "," << constellation.name() << "," << stats.samples << "," << stats.nonzero
        << "," << stats.zero_dets << ","
        << (stats.min_abs_sq ? rat_to_string(*stats.min_abs_sq) : "n/a") << ","
        << (stats.normalized_min ? rat_to_string(*stats.normalized_min) : "n/a") << "," << seed
        << "\n";
    write_output(out, csv.str());
    return 0;
}

int cmd_decodability(const std::string& preset, const std::string& subcode_name,
                     const std::string& out) {
    json inputs{{"subcommand", "decodability"}, {"preset", preset}, {"subcode", subcode_name}};
    CodeSpec spec = code_by_name(preset);
    Subcode subcode = subcode_name == "all" ? Subcode::All : Subcode::DiagonalBlock;
    DecodabilityReport report = analyze_decodability(spec, subcode);
    json groups = json::array();
    for (const auto& g : report.partition.groups) groups.push_back(g);
    json pattern = json::array();
    for (const auto& row : report.m_nonzero) {
        json r = json::array();
        for (bool b : row) r.push_back(b ? 1 : 0);
        pattern.push_back(r);
    }
    json j = provenance(inputs);
    j["preset"] = preset;
    j["subcode"] = subcode_name;
    j["real_symbols"] = report.real_symbols;
    j["groups"] = groups;
    j["l"] = report.partition.l();
    j["complexity_exponent"] = rat_to_string(report.exponent);
    j["m_nonzero"] = pattern;
    write_output(out, j.dump(2));
    return 0;
}

int cmd_simulate(const std::string& preset, const std::string& constellation_name, unsigned layers,
                 const std::string& snr_db_spec, unsigned long trials, uint64_t seed,
                 const std::string& decoder, unsigned n_r, const std::string& out) {
    json inputs{{"subcommand", "simulate"},
                {"preset", preset},
                {"constellation", constellation_name},
                {"layers", layers},
                {"snr_db", snr_db_spec},
                {"trials", trials},
                {"seed", seed},
                {"decoder", decoder},
                {"n_r", n_r}};
    if (layers != 1) throw std::runtime_error("only --layers 1 is supported");
    if (decoder != "exhaustive" && decoder != "sphere")
        throw std::runtime_error("--decoder must be exhaustive or sphere");
    CodeSpec spec = code_by_name(preset);
    Constellation constellation = Constellation::by_name(constellation_name);
    EmbeddedCodebook cb = build_one_layer_codebook(spec, constellation);

    // snr range a:step:b (dB) or a single value
    double lo, step = 1, hi;
    if (sscanf(snr_db_spec.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) == 3) {
    } else if (sscanf(snr_db_spec.c_str(), "%lf", &lo) == 1) {
        hi = lo;
    } else {
        throw CLI::ValidationError("--snr-db must be 'a' or 'a:step:b'");
    }
    std::ostringstream csv;
    csv << "# " << provenance(inputs).dump() << "\n";
    csv << "snr_db,trials,errors,rate\n";
    for (double snr = lo; snr <= hi + 1e-9; snr += step) {
        ChannelConfig cfg;
        cfg.n_r = n_r == 0 ? spec.n() : n_r;
        cfg.rho = std::pow(10.0, snr / 10.0);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.decoder = decoder;
        SimResult r = simulate(cb, cfg);
        csv << snr << "," << r.trials << "," << r.errors << "," << r.error_rate << "\n";
        if (step <= 0) break;
    }
    write_output(out, csv.str());
    return 0;
}

int cmd_algebra_check(const AlgebraChoice& choice, unsigned samples, uint64_t seed,
                      const std::string& out) {
    json inputs{{"subcommand", "algebra-check"}, {"algebra", choice.id}, {"samples", samples},
                {"seed", seed}};
    const IterPtr& A = choice.algebra;
    SplitMix64 rng = keyed_rng(seed, 0);

    auto random_k = [&](void) {
        CycloElement acc = A->field()->zero();
        std::vector<CycloElement> mono{A->field()->one()};
        for (const auto& g : A->tower().k_generators()) {
            std::vector<CycloElement> next;
            CycloElement p = A->field()->one();
            for (unsigned e = 0; e < 4; ++e) {
                for (const auto& mn : mono) next.push_back(mn * p);
                p = p * g;
            }
            mono = std::move(next);
        }
        for (const auto& mn : mono)
            acc += A->field()->from_rational(Rational(rng.range(-2, 2))) * mn;
        return acc;
    };
    auto random_d = [&]() {
        std::vector<CycloElement> coords;
        for (unsigned i = 0; i < A->m(); ++i) coords.push_back(random_k());
        return A->D()->element(std::move(coords));
    };
    auto random_a = [&]() {
        std::vector<DElement> coords;
        for (unsigned i = 0; i < A->n(); ++i) coords.push_back(random_d());
        return A->element(std::move(coords));
    };

    unsigned failures = 0;
    json checks = json::array();
    auto record = [&](const std::string& name, bool ok) {
        checks.push_back(json{{"check", name}, {"pass", ok}});
        if (!ok) ++failures;
    };

    bool unit_ok = true, rep_ok = true, mrep_ok = true, assoc_ok = true, tau_ok = true;
    const bool have_rep = A->variant() != IterVariant::Right || A->d_in_L();
    const bool d_in_F0 = A->d().in_K() && A->tower().in_F0(A->d().coord(0));
    // D sits in the middle nucleus for the left variant always, and for the
    // right variant whenever d is outside F0
    const bool probe_nucleus = A->variant() == IterVariant::Left ||
                               (A->variant() == IterVariant::Right && !d_in_F0);
    for (unsigned s = 0; s < samples; ++s) {
        AElement x = random_a(), y = random_a();
        if (!(a_mul(A->one(), x) == x && a_mul(x, A->one()) == x)) unit_ok = false;
        if (have_rep) {
            auto lhs = flatten(a_mul(x, y));
            auto rhs = lambda_matrix(x).apply(flatten(y));
            if (lhs != rhs) rep_ok = false;
        }
        if (m_matrix(x).apply(y.coords()) != a_mul(x, y).coords()) mrep_ok = false;
        if (probe_nucleus && !associator(x, A->from_D(random_d()), y).is_zero()) assoc_ok = false;
        DElement dd = random_d();
        DElement td = dd;
        for (unsigned j = 0; j < A->n(); ++j) td = apply_tau(td);
        if (!(td == dd)) tau_ok = false;
    }
    record("unit-law", unit_ok);
    if (have_rep) record("k-representation", rep_ok);
    record("d-matrix-representation", mrep_ok);
    if (probe_nucleus) record("middle-nucleus", assoc_ok);
    record("tau-extension-order", tau_ok);

    // f-relations
    AElement f = A->from_D(A->D()->one(), 1);
    AElement fpow = f;
    for (unsigned i = 2; i < A->n(); ++i) fpow = a_mul(fpow, f);
    bool frel = a_mul(fpow, f) == A->from_D(A->d()) && a_mul(f, fpow) == A->from_D(A->d());
    record("wraparound-d", frel);

    json j = provenance(inputs);
    j["checks"] = checks;
    j["failures"] = failures;
    write_output(out, j.dump(2));
    return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterated-algebra space-time block code toolkit"};
    app.require_subcommand(1);

    std::string preset, config, variant = "right", d_text, out, emit;
    long box = 1;
    unsigned long sample = 100, trials = 1000;
    uint64_t seed = 0;
    unsigned layers = 0, samples = 100, n_r = 0;
    bool exhaustive = false;
    std::string constellation = "hex4", subcode = "diagonal", snr_db = "10", decoder = "exhaustive";

    auto* tower_cmd = app.add_subcommand("tower", "emit or validate a tower configuration");
    tower_cmd->add_option("--preset", preset, "6x3 or 8x4");
    tower_cmd->add_option("--config", config, "tower JSON to validate");
    tower_cmd->add_option("--out", out, "output path (default stdout)");

    auto* check_cmd = app.add_subcommand("algebra-check", "randomized structural probes");
    check_cmd->add_option("--preset", preset, "code preset name");
    check_cmd->add_option("--config", config, "tower JSON");
    check_cmd->add_option("--variant", variant, "left|middle|right (with --config)");
    check_cmd->add_option("--d", d_text, "d as JSON coordinate vectors (with --config)");
    check_cmd->add_option("--samples", samples, "random samples per check");
    check_cmd->add_option("--seed", seed, "RNG seed (echoed in output)");
    check_cmd->add_option("--out", out, "output path");

    auto* certify_cmd = app.add_subcommand("certify", "run division certificates");
    certify_cmd->add_option("--preset", preset, "code preset name");
    certify_cmd->add_option("--config", config, "tower JSON");
    certify_cmd->add_option("--variant", variant, "left|middle|right (with --config)");
    certify_cmd->add_option("--d", d_text, "d as JSON coordinate vectors (with --config)");
    certify_cmd->add_option("--box", box, "search bound");
    certify_cmd->add_option("--out", out, "output path");

    auto* codebook_cmd = app.add_subcommand("codebook", "emit sampled codewords");
    codebook_cmd->add_option("--preset", preset)->required();
    codebook_cmd->add_option("--constellation", constellation, "hex4|qam4|qam16|...");
    codebook_cmd->add_option("--sample", sample, "number of codewords");
    codebook_cmd->add_option("--seed", seed);
    codebook_cmd->add_option("--layers", layers, "restrict symbols to this many layers (0 = all)");
    codebook_cmd->add_option("--emit", emit, "output path");

    auto* mindet_cmd = app.add_subcommand("mindet", "survey minimum |det|^2");
    mindet_cmd->add_option("--preset", preset)->required();
    mindet_cmd->add_option("--constellation", constellation);
    mindet_cmd->add_option("--sample", sample);
    mindet_cmd->add_option("--seed", seed);
    mindet_cmd->add_option("--layers", layers);
    mindet_cmd->add_flag("--exhaustive", exhaustive,
                         "enumerate every one-layer codeword instead of sampling");
    mindet_cmd->add_option("--out", out, "CSV output path");

    auto* deco_cmd = app.add_subcommand("decodability", "group decodability analysis");
    deco_cmd->add_option("--preset", preset)->required();
    deco_cmd->add_option("--subcode", subcode, "diagonal|all");
    deco_cmd->add_option("--out", out);

    auto* sim_cmd = app.add_subcommand("simulate", "seeded channel simulation");
    sim_cmd->add_option("--preset", preset)->required();
    sim_cmd->add_option("--constellation", constellation);
    sim_cmd->add_option("--layers", layers, "populated layers (1 supported)");
    sim_cmd->add_option("--snr-db", snr_db, "a or a:step:b");
    sim_cmd->add_option("--trials", trials);
    sim_cmd->add_option("--seed", seed);
    sim_cmd->add_option("--decoder", decoder, "exhaustive|sphere");
    sim_cmd->add_option("--nr", n_r, "receive antennas (default n)");
    sim_cmd->add_option("--out", out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        // help requests succeed; every other parse problem is a
        // validation failure
        return rc == 0 ? 0 : 1;
    }

    try {
        if (tower_cmd->parsed()) return cmd_tower(preset, config, out);
        if (check_cmd->parsed()) {
            auto choice = resolve_algebra(preset, config, variant, d_text);
            return cmd_algebra_check(choice, samples, seed, out);
        }
        if (certify_cmd->parsed()) {
            auto choice = resolve_algebra(preset, config, variant, d_text);
            return cmd_certify(choice, box, out);
        }
        if (codebook_cmd->parsed())
            return cmd_codebook(preset, constellation, sample, seed, layers, emit);
        if (mindet_cmd->parsed())
            return cmd_mindet(preset, constellation, sample, seed, layers, exhaustive, out);
        if (deco_cmd->parsed()) return cmd_decodability(preset, subcode, out);
        if (sim_cmd->parsed())
            return cmd_simulate(preset, constellation, layers == 0 ? 1 : layers, snr_db, trials,
                                seed, decoder, n_r, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

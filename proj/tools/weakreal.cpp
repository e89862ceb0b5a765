// weakreal: command-line front end for the PPS weak-value engine.
//
// Exit codes: 0 success, 2 malformed input, 3 dimension mismatch,
// 4 orthogonal pre/post-selection.

#include "weakreal/json_io.hpp"
#include "weakreal/pointer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitOrthogonal = 4;

using weakreal::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << text << "\n";
    }
}

std::vector<weakreal::cplx> weak_vector_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("weak_values") ? j.at("weak_values") : j;
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("expected a JSON array of [re, im] pairs");
    std::vector<weakreal::cplx> out;
    for (const auto& e : arr) out.push_back(weakreal::cplx_from_json(e));
    return out;
}

weakreal::Params parse_params(const std::vector<std::string>& kvs) {
    weakreal::Params params;
    for (const auto& kv : kvs) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("--param expects k=v, got: " + kv);
        try {
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("--param value is not a number: " + kv);
        }
    }
    return params;
}

struct Args {
    std::string pre, post, observable, out;
    std::string weak_values_file, vector_literal;
    std::string scenario, name, json_path, target, mode = "gell_mann", state_label;
    std::vector<std::string> param_kvs;
    double d = 1e-3, epsilon = 1.0;
    bool sweep = false;
    int bound = 2;
    int dim = 0;
};

/// Rank-1 projector onto a fine-basis state of a scenario, looked up by
/// its label.
weakreal::Projector scenario_projector(const weakreal::ScenarioReport& report,
                                       const std::string& label) {
    const auto& basis = report.bases.front();
    for (std::size_t i = 0; i < basis.labels.size(); ++i)
        if (basis.labels[i] == label)
            return weakreal::Projector::from_support(report.pps->dim(),
                                                     {static_cast<int>(i)});
    throw std::invalid_argument("scenario has no basis state labeled '" + label + "'");
}

int cmd_weakvalue(const Args& a) {
    using namespace weakreal;
    Ket pre = ket_from_json(load_json(a.pre));
    Ket post = ket_from_json(load_json(a.post));
    HermitianOperator obs = operator_from_json(load_json(a.observable));
    if (pre.dim() != post.dim() || pre.dim() != obs.dim()) {
        std::cerr << "error: dimension mismatch between states and observable\n";
        return kExitDimension;
    }
    PPSPair pps(pre, post);
    EigenSystem es = eigendecompose(obs);
    std::vector<std::string> names;
    for (double ev : es.eigenvalues) names.push_back("eigenvalue " + std::to_string(ev));
    json out = {{"weak_value", to_json(weak_value(pps, obs))},
                {"upside_down_state", to_json(upside_down(pps))},
                {"eigenbasis_report", to_json(projector_weak_values(pps, es.projectors, names))}};
    emit(out, a.out);
    return 0;
}

int cmd_abl(const Args& a) {
    using namespace weakreal;
    Ket pre = ket_from_json(load_json(a.pre));
    Ket post = ket_from_json(load_json(a.post));
    HermitianOperator obs = operator_from_json(load_json(a.observable));
    if (pre.dim() != post.dim() || pre.dim() != obs.dim()) {
        std::cerr << "error: dimension mismatch between states and observable\n";
        return kExitDimension;
    }
    PPSPair pps(pre, post);
    EigenSystem es = eigendecompose(obs);
    emit({{"eigenvalues", es.eigenvalues},
          {"probabilities", abl_probabilities(pps, es.projectors)},
          {"conditional_expectation", conditional_expectation(pps, obs)}},
         a.out);
    return 0;
}

int cmd_paradox(const Args& a) {
    using namespace weakreal;
    std::vector<cplx> wv;
    if (!a.vector_literal.empty()) {
        for (const auto& x : parse_rational_vector(a.vector_literal)) wv.push_back(x.value());
    } else if (!a.weak_values_file.empty()) {
        wv = weak_vector_from_json(load_json(a.weak_values_file));
    } else {
        throw std::invalid_argument("paradox needs --weak-values or --vector");
    }
    auto cert = detect_paradox(wv);
    if (cert)
        emit(to_json(*cert), a.out);
    else
        std::cout << "none\n";
    return 0;
}

int cmd_scenarios_list(const Args&) {
    using namespace weakreal;
    json names = json::array();
    for (const auto& n : scenario_names())
        names.push_back({{"name", n}, {"defaults", scenario_defaults(n)}});
    emit(names, "");
    return 0;
}

int cmd_scenarios_run(const Args& a) {
    using namespace weakreal;
    ScenarioReport report = run_scenario(a.name, parse_params(a.param_kvs));
    emit(to_json(report), a.json_path);
    return report.all_pass() ? 0 : 1;
}

int cmd_pointer_sim(const Args& a) {
    using namespace weakreal;
    ScenarioReport report = run_scenario(a.scenario, parse_params(a.param_kvs));
    Projector proj = scenario_projector(report, a.state_label);
    HermitianOperator obs(proj.matrix());
    const PPSPair& pps = *report.pps;
    cplx aw = weak_value(pps, proj);
    if (a.sweep) {
        WeakLimitReport sweep = weak_limit_check(pps, obs, {1e-1, 1e-2, 1e-3});
        json points = json::array();
        for (const auto& pt : sweep.points)
            points.push_back({{"d_over_eps", pt.d_over_eps},
                              {"mean_x", pt.mean_x},
                              {"mean_p", pt.mean_p},
                              {"x_error", pt.x_error},
                              {"p_error", pt.p_error}});
        emit({{"weak_value", to_json(sweep.weak_value)},
              {"second_order_convergence", sweep.second_order_convergence},
              {"points", points}},
             a.out);
        return 0;
    }
    CouplingConfig cfg{a.d, a.epsilon};
    PointerState state = measure_and_postselect(pps, obs, cfg);
    PointerMoments m = pointer_moments(state);
    double px = cfg.d * aw.real();
    double pp = cfg.d / (cfg.epsilon * cfg.epsilon) * aw.imag();
    json out = to_json(state);
    out["mean_x"] = m.mean_x;
    out["mean_p"] = m.mean_p;
    out["predictions"] = {{"mean_x", px}, {"mean_p", pp}};
    out["errors"] = {{"mean_x", std::abs(m.mean_x - px)}, {"mean_p", std::abs(m.mean_p - pp)}};
    emit(out, a.out);
    return 0;
}

int cmd_decompose(const Args& a) {
    using namespace weakreal;
    emit(to_json(decompose(parse_rational_vector(a.target), a.bound)), a.out);
    return 0;
}

int cmd_structures(const Args& a) {
    using namespace weakreal;
    ScenarioReport report = run_scenario(a.scenario, parse_params(a.param_kvs));
    StructureSet set =
        report.structures
            ? *report.structures
            : build_structures(report.pps->space(), report.bases.front().weak_values);
    emit(to_json(set), a.out);
    return 0;
}

int cmd_gellmann(const Args& a) {
    using namespace weakreal;
    CardinalMode mode;
    if (a.mode == "gell_mann")
        mode = CardinalMode::gell_mann;
    else if (a.mode == "pauli_product")
        mode = CardinalMode::pauli_product;
    else
        throw std::invalid_argument("unknown mode: " + a.mode);
    auto basis = cardinal_basis(a.dim, mode);
    double max_err = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            cplx g = (basis[i].matrix() * basis[j].matrix()).trace();
            max_err = std::max(max_err, std::abs(g - (i == j ? cplx(2.0) : cplx(0.0))));
        }
    }
    json mats = json::array();
    for (const auto& op : basis) mats.push_back(to_json(op));
    emit({{"dimension", a.dim},
          {"mode", a.mode},
          {"count", basis.size()},
          {"matrices", mats},
          {"max_gram_error", max_err}},
         a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-symmetric (pre/post-selected) quantum mechanics toolkit"};
    app.require_subcommand(1);
    Args a;

    auto* wv = app.add_subcommand("weakvalue", "weak value of an observable from state files");
    wv->add_option("--pre", a.pre, "pre-selection ket JSON")->required();
    wv->add_option("--post", a.post, "post-selection ket JSON")->required();
    wv->add_option("--observable", a.observable, "Hermitian observable JSON")->required();
    wv->add_option("--out", a.out, "output file (default: stdout)");

    auto* abl = app.add_subcommand("abl", "ABL probabilities over an observable's eigenbasis");
    abl->add_option("--pre", a.pre, "pre-selection ket JSON")->required();
    abl->add_option("--post", a.post, "post-selection ket JSON")->required();
    abl->add_option("--observable", a.observable, "Hermitian observable JSON")->required();
    abl->add_option("--out", a.out, "output file (default: stdout)");

    auto* par = app.add_subcommand("paradox", "certify a weak-value vector as a PPS paradox");
    par->add_option("--weak-values", a.weak_values_file, "JSON array of [re, im] pairs");
    par->add_option("--vector", a.vector_literal, "inline vector literal, e.g. \"(1,1,-1)\"");
    par->add_option("--out", a.out, "output file (default: stdout)");

    auto* sc = app.add_subcommand("scenarios", "registered case studies");
    sc->require_subcommand(1);
    auto* sc_list = sc->add_subcommand("list", "list scenarios and default parameters");
    auto* sc_run = sc->add_subcommand("run", "run a scenario and report fixtures");
    sc_run->add_option("name", a.name, "scenario name")->required();
    sc_run->add_option("--param", a.param_kvs, "parameter override k=v")->take_all();
    sc_run->add_option("--json", a.json_path, "write the report to this file");

    auto* ps = app.add_subcommand("pointer-sim", "Gaussian pointer measurement simulation");
    ps->add_option("--scenario", a.scenario, "scenario name")->required();
    ps->add_option("--observable", a.state_label, "fine-basis state label to project on")
        ->required();
    ps->add_option("--param", a.param_kvs, "scenario parameter override k=v")->take_all();
    ps->add_option("--d", a.d, "pointer shift scale");
    ps->add_option("--epsilon", a.epsilon, "pointer width");
    ps->add_flag("--sweep", a.sweep, "sweep d/eps over {1e-1, 1e-2, 1e-3}");
    ps->add_option("--out", a.out, "output file (default: stdout)");

    auto* dec = app.add_subcommand("decompose", "minimal counterparticle decomposition");
    dec->add_option("target", a.target, "target vector, e.g. \"(4/3,-1/3)\"")->required();
    dec->add_option("--bound", a.bound, "extra search margin above ceil(max |target|)");
    dec->add_option("--out", a.out, "output file (default: stdout)");

    auto* st = app.add_subcommand("structures", "N-structure graph of a scenario");
    st->add_option("--scenario", a.scenario, "scenario name")->required();
    st->add_option("--param", a.param_kvs, "scenario parameter override k=v")->take_all();
    st->add_option("--out", a.out, "output file (default: stdout)");

    auto* gm = app.add_subcommand("gellmann", "cardinal operator basis");
    gm->add_option("--d", a.dim, "Hilbert-space dimension")->required();
    gm->add_option("--mode", a.mode, "gell_mann or pauli_product");
    gm->add_option("--out", a.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (wv->parsed()) return cmd_weakvalue(a);
        if (abl->parsed()) return cmd_abl(a);
        if (par->parsed()) return cmd_paradox(a);
        if (sc->parsed()) return sc_list->parsed() ? cmd_scenarios_list(a) : cmd_scenarios_run(a);
        if (ps->parsed()) return cmd_pointer_sim(a);
        if (dec->parsed()) return cmd_decompose(a);
        if (st->parsed()) return cmd_structures(a);
        if (gm->parsed()) return cmd_gellmann(a);
        std::cerr << app.help();
        return kExitParse;
    } catch (const weakreal::OrthogonalPPSError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOrthogonal;
    } catch (const weakreal::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

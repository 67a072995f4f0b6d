// Copyright 2026 The locctrace developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front-end: runs estimation experiments from flags and/or a JSON
// config file and emits one JSON-lines record per result.
//
// Exit codes: 0 success, 1 configuration problems (bad flags, bad config,
// unreadable files, unknown labels), 2 violated preconditions or contracts,
// 3 approximation failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "locctrace/fixtures.hpp"
#include "locctrace/io.hpp"
#include "locctrace/locctrace.hpp"

namespace lt = locctrace;
using lt::Json;

namespace {

using Clock = std::chrono::steady_clock;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 42;
    double eps = 0.1;
    double delta = 0.25;
    int d = 2;
    int threads = 1;
    Json config;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "JSON config file; flags take precedence");
    cmd->add_option("--out", a.out_path, "output path for JSON-lines records (default stdout)");
    cmd->add_option("--seed", a.seed, "base seed (fixed default keeps runs reproducible)");
    cmd->add_option("--eps", a.eps, "target additive error");
    cmd->add_option("--delta", a.delta, "spectral floor parameter");
    cmd->add_option("--d", a.d, "fixture dimension (power of two)");
    cmd->add_option("--threads", a.threads, "worker threads");
}

/// Applies config-file values to options the user did not pass on the
/// command line; unknown keys are reported by name.
void merge_config(CLI::App* cmd, CommonArgs& a) {
    if (a.config_path.empty()) return;
    std::ifstream in(a.config_path);
    if (!in) throw lt::InvalidInputError("cannot open config '" + a.config_path + "'");
    try {
        in >> a.config;
    } catch (const std::exception& e) {
        throw lt::InvalidInputError("config '" + a.config_path + "' is not valid JSON: " +
                                    e.what());
    }
    if (!a.config.is_object())
        throw lt::InvalidInputError("config '" + a.config_path + "' must be a JSON object");
    for (const auto& [key, value] : a.config.items()) {
        CLI::Option* opt = nullptr;
        try {
            opt = cmd->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw lt::InvalidInputError("config key '" + key + "' is not a known option");
        }
        if (opt->count() > 0) continue; // flags win
        const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        try {
            opt->run_callback();
        } catch (const CLI::ConversionError&) {
            throw lt::InvalidInputError("config key '" + key + "' has an invalid value");
        }
    }
}

class RecordWriter {
  public:
    explicit RecordWriter(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw lt::InvalidInputError("cannot open output '" + path + "'");
        }
    }
    void write(const Json& record) {
        std::ostream& os = file_.is_open() ? file_ : std::cout;
        os << record.dump() << "\n";
    }

  private:
    std::ofstream file_;
};

Json base_record(const std::string& command, const CommonArgs& a, Json spec) {
    Json j;
    j["command"] = command;
    j["spec"] = std::move(spec);
    j["seed"] = a.seed;
    return j;
}

void finish_record(Json& j, std::optional<double> oracle, double wall_ms) {
    if (oracle) {
        j["oracle"] = *oracle;
        double err = 0.0;
        if (j.contains("estimate")) {
            if (j["estimate"].is_array()) {
                const double re = j["estimate"][0].get<double>();
                const double im = j["estimate"][1].get<double>();
                err = std::abs(lt::Complex(re, im) - lt::Complex(*oracle, 0.0));
            } else {
                err = std::abs(j["estimate"].get<double>() - *oracle);
            }
        }
        j["error"] = err;
    } else {
        j["oracle"] = nullptr;
        j["error"] = nullptr;
    }
    j["wall_ms"] = wall_ms;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- trace ---

int run_trace(const CommonArgs& a, const std::string& f_id, const std::string& g_id,
              const std::string& a_file, const std::string& b_file, const std::string& mode,
              double encoding_eps) {
    RecordWriter out(a.out_path);
    const auto t0 = Clock::now();

    lt::Matrix mat_a, mat_b;
    std::string fixture = "files";
    if (a_file.empty() && b_file.empty()) {
        fixture = "pure-state";
        mat_a = lt::fixtures::pure_state(a.d, a.seed);
        mat_b = mat_a;
    } else if (!a_file.empty() && !b_file.empty()) {
        mat_a = lt::load_matrix(a_file);
        mat_b = lt::load_matrix(b_file);
    } else {
        throw lt::InvalidInputError("trace: provide both --a-file and --b-file or neither");
    }

    lt::TraceFgOptions opts;
    opts.seed = a.seed;
    opts.threads = a.threads;
    if (mode == "lipschitz") {
        opts.mode = lt::TraceMode::LipschitzApprox;
        opts.encoding_eps_a = encoding_eps;
        opts.encoding_eps_b = encoding_eps;
    } else if (mode != "exact") {
        throw lt::InvalidInputError("trace: --mode must be exact or lipschitz");
    }
    lt::TraceFgResult res = lt::estimate_trace_fg(mat_a, mat_b, f_id, g_id, a.eps, a.delta, opts);

    // Exact oracle when both inputs are Hermitian.
    std::optional<double> oracle;
    if (lt::is_hermitian(mat_a, 1e-10) && lt::is_hermitian(mat_b, 1e-10)) {
        lt::FunctionSpec fs = lt::parse_function_label(f_id);
        lt::FunctionSpec gs = lt::parse_function_label(g_id);
        lt::Matrix fa = lt::hermitian_function(mat_a, fs.fn);
        lt::Matrix gb = lt::hermitian_function(mat_b, gs.fn);
        oracle = (fa * gb).trace().real();
    }

    Json spec{{"f", f_id},          {"g", g_id},    {"fixture", fixture},
              {"mode", mode},       {"eps", a.eps}, {"delta", a.delta},
              {"d", a.d},           {"encoding_eps", encoding_eps}};
    Json rec = base_record("trace", a, std::move(spec));
    rec["estimate"] = lt::complex_to_json(res.value);
    rec["queries_simulated"] = res.queries_simulated;
    rec["N"] = res.N;
    rec["m"] = res.m;
    rec["encoding_eta"] = Json::array({res.encoding_eta_a, res.encoding_eta_b});
    finish_record(rec, oracle, ms_since(t0));
    out.write(rec);
    return 0;
}

// ---------------------------------------------------------- divergences ---

int run_rel_entropy(const CommonArgs& a, const std::string& rho_file,
                    const std::string& sigma_file, const std::string& fixture,
                    double lambda_min) {
    RecordWriter out(a.out_path);
    const auto t0 = Clock::now();

    lt::Matrix rho, sigma;
    if (!rho_file.empty() && !sigma_file.empty()) {
        rho = lt::load_matrix(rho_file);
        sigma = lt::load_matrix(sigma_file);
    } else if (fixture == "diag") {
        std::tie(rho, sigma) = lt::fixtures::diag_entropy_pair();
    } else if (fixture == "diag4") {
        std::tie(rho, sigma) = lt::fixtures::diag_entropy_pair_d4();
    } else if (fixture == "random") {
        std::tie(rho, sigma) = lt::fixtures::random_density_pair(a.d, lambda_min, a.seed);
    } else {
        throw lt::InvalidInputError("rel-entropy: unknown fixture '" + fixture + "'");
    }

    lt::RelativeEntropyOptions opts;
    opts.seed = a.seed;
    opts.threads = a.threads;
    lt::DivergenceResult res = lt::relative_entropy(rho, sigma, a.eps, a.delta, opts);
    const double oracle = lt::fixtures::exact_relative_entropy(rho, sigma);

    Json spec{{"fixture", fixture}, {"eps", a.eps}, {"delta", a.delta},
              {"d", rho.rows()},    {"lambda_min", lambda_min}};
    Json rec = base_record("rel-entropy", a, std::move(spec));
    rec["estimate"] = res.value;
    rec["queries_simulated"] = res.queries_simulated;
    Json terms = Json::array();
    for (const auto& t : res.trace_terms)
        terms.push_back(Json{{"label", t.label},
                             {"estimate", lt::complex_to_json(t.estimate)},
                             {"rescale_k", t.rescale_k}});
    rec["trace_terms"] = std::move(terms);
    Json budget = Json::array();
    for (const auto& b : res.eps_budget)
        budget.push_back(
            Json{{"label", b.label}, {"requested", b.requested}, {"achieved", b.achieved}});
    rec["eps_budget"] = std::move(budget);
    finish_record(rec, oracle, ms_since(t0));
    out.write(rec);
    return 0;
}

int run_renyi(const CommonArgs& a, double alpha, int rank, const std::string& rho_file,
              const std::string& sigma_file, const std::string& fixture, double lambda_min) {
    RecordWriter out(a.out_path);
    const auto t0 = Clock::now();

    lt::Matrix rho, sigma;
    if (!rho_file.empty() && !sigma_file.empty()) {
        rho = lt::load_matrix(rho_file);
        sigma = lt::load_matrix(sigma_file);
    } else if (fixture == "diag") {
        rho = lt::Matrix::Zero(2, 2);
        rho(0, 0) = 0.9;
        rho(1, 1) = 0.1;
        sigma = 0.5 * lt::Matrix::Identity(2, 2);
    } else if (fixture == "random") {
        std::tie(rho, sigma) = lt::fixtures::random_density_pair(a.d, lambda_min, a.seed);
    } else {
        throw lt::InvalidInputError("renyi: unknown fixture '" + fixture + "'");
    }
    if (rank == 0) rank = static_cast<int>(rho.rows());

    lt::RenyiOptions opts;
    opts.seed = a.seed;
    opts.threads = a.threads;
    lt::DivergenceResult res = lt::renyi_entropy(rho, sigma, alpha, a.eps, a.delta, rank, opts);
    const double oracle = lt::fixtures::exact_renyi_entropy(rho, sigma, alpha);

    Json spec{{"fixture", fixture}, {"alpha", alpha}, {"eps", a.eps}, {"delta", a.delta},
              {"rank", rank},       {"d", rho.rows()}, {"lambda_min", lambda_min}};
    Json rec = base_record("renyi", a, std::move(spec));
    rec["estimate"] = res.value;
    rec["trace_floor"] = res.trace_floor;
    rec["trace_floor_adaptive"] = res.trace_floor_adaptive;
    rec["queries_simulated"] = res.queries_simulated;
    finish_record(rec, oracle, ms_since(t0));
    out.write(rec);
    return 0;
}

// -------------------------------------------------------------- linsolve ---

int run_linsolve(const CommonArgs& a, const std::string& a_file, const std::string& b_file,
                 const std::string& fixture, double sv_min) {
    RecordWriter out(a.out_path);
    const auto t0 = Clock::now();

    lt::Matrix mat;
    lt::Vector rhs;
    if (!a_file.empty() && !b_file.empty()) {
        mat = lt::load_matrix(a_file);
        lt::Matrix b = lt::load_matrix(b_file);
        if (b.cols() != 1) throw lt::InvalidInputError("linsolve: --b-file must be a column");
        rhs = b.col(0);
    } else if (fixture == "diag") {
        std::tie(mat, rhs) = lt::fixtures::diag_linear_system();
    } else if (fixture == "random") {
        std::tie(mat, rhs) = lt::fixtures::random_linear_system(a.d, sv_min, a.seed);
    } else {
        throw lt::InvalidInputError("linsolve: unknown fixture '" + fixture + "'");
    }

    lt::LinearSolveOptions opts;
    opts.seed = a.seed;
    opts.threads = a.threads;
    lt::SolveResult res = lt::linear_solve(mat, rhs, a.eps, a.delta, opts);
    const lt::Vector exact = mat.fullPivLu().solve(rhs);
    const double err = (res.x_tilde - exact).norm();

    Json spec{{"fixture", fixture}, {"eps", a.eps}, {"delta", a.delta}, {"d", mat.rows()}};
    Json rec = base_record("linsolve", a, std::move(spec));
    Json xs = Json::array();
    for (Eigen::Index i = 0; i < res.x_tilde.size(); ++i)
        xs.push_back(lt::complex_to_json(res.x_tilde(i)));
    rec["estimate"] = std::move(xs);
    rec["residual"] = res.residual;
    rec["per_component_eps"] = res.per_component_eps;
    rec["queries_simulated"] = res.queries_simulated;
    rec["oracle"] = nullptr; // vector-valued; solution error carried below
    rec["error"] = err;
    rec["wall_ms"] = ms_since(t0);
    out.write(rec);
    return 0;
}

// ---------------------------------------------------------------- hamsim ---

int run_hamsim(const CommonArgs& a, const std::string& h1_file, const std::string& h2_file,
               const std::string& m_file, const std::string& rho_file,
               const std::string& fixture, double t_in, double inject_eps) {
    RecordWriter out(a.out_path);
    const auto t0 = Clock::now();

    lt::fixtures::HamiltonianFixture f;
    if (!h1_file.empty()) {
        if (h2_file.empty() || m_file.empty() || rho_file.empty())
            throw lt::InvalidInputError(
                "hamsim: need all of --h1-file --h2-file --m-file --rho-file");
        f.h1 = lt::load_matrix(h1_file);
        f.h2 = lt::load_matrix(h2_file);
        f.observable = lt::load_matrix(m_file);
        f.rho = lt::load_matrix(rho_file);
    } else if (fixture == "commuting") {
        f = lt::fixtures::commuting_hamiltonians(a.d, a.seed);
    } else if (fixture == "random") {
        f = lt::fixtures::random_hamiltonians(a.d, a.seed);
    } else {
        throw lt::InvalidInputError("hamsim: unknown fixture '" + fixture + "'");
    }
    const int d = static_cast<int>(f.h1.rows());
    const double t = (t_in != 0.0) ? t_in : 0.5 / std::sqrt(static_cast<double>(d));

    lt::HamiltonianOptions opts;
    opts.seed = a.seed;
    opts.threads = a.threads;
    opts.inject_eps = inject_eps;
    lt::SimResult res =
        lt::hamiltonian_expectation(f.h1, f.h2, f.observable, f.rho, t, a.eps, opts);

    Json spec{{"fixture", fixture}, {"eps", a.eps}, {"t", t}, {"d", d},
              {"inject_eps", inject_eps}};
    Json rec = base_record("hamsim", a, std::move(spec));
    rec["estimate"] = res.estimate;
    rec["commutator_norm"] = res.commutator;
    rec["queries_simulated"] = res.queries_simulated;
    finish_record(rec, res.exact, ms_since(t0));
    out.write(rec);
    return 0;
}

// ---------------------------------------------------------- verify-polys ---

int run_verify_polys(const CommonArgs& a) {
    RecordWriter out(a.out_path);
    auto emit = [&](const std::string& target, const lt::BoundedPoly& poly) {
        const auto t0 = Clock::now();
        Json rec = base_record("verify-polys", a,
                               Json{{"target", target}, {"eps", a.eps}, {"delta", a.delta}});
        rec["degree"] = poly.degree();
        rec["parity"] = poly.parity() == lt::Parity::Even ? "even" : "odd";
        Json certs = Json::array();
        double achieved = 0.0;
        bool ok = true;
        for (const auto& c : poly.certificates()) {
            certs.push_back(Json{{"label", c.label},
                                 {"lo", c.lo},
                                 {"hi", c.hi},
                                 {"bound", c.bound},
                                 {"max_observed", c.max_observed},
                                 {"grid_points", c.grid_points}});
            if (c.label == "accuracy") achieved = c.max_observed;
            ok = ok && (c.max_observed <= c.bound + 1e-12);
        }
        rec["certificates"] = std::move(certs);
        rec["achieved_eps"] = achieved;
        rec["ok"] = ok;
        rec["coeff_abs_sum"] = poly.coeff_abs_sum();
        finish_record(rec, std::nullopt, ms_since(t0));
        out.write(rec);
    };

    auto [pl, K] = lt::log_poly(a.delta, a.eps);
    emit("log", pl);
    emit("rect", lt::rect_poly(0.5, a.delta, a.eps));
    emit("power-negative",
         lt::power_poly(1.0, lt::Parity::Even, a.delta, a.eps, lt::PowerSign::Negative));
    emit("power-positive",
         lt::power_poly(0.5, lt::Parity::Even, a.delta, a.eps, lt::PowerSign::Positive));
    emit("inverse", lt::inverse_poly(a.delta, a.eps));
    return 0;
}

// -------------------------------------------------------- variance-sweep ---

int run_variance_sweep(const CommonArgs& a, std::vector<int> d_list, std::vector<int> m_mults,
                       std::vector<int> n_list, int replays) {
    RecordWriter out(a.out_path);
    if (d_list.empty()) d_list = {2, 4};
    if (m_mults.empty()) m_mults = {1, 4, 16};
    if (n_list.empty()) n_list = {25, 100};

    const lt::BoundedPoly ident = lt::BoundedPoly::monomial(1, 1.0);
    for (int d : d_list) {
        auto [fa, fb] = lt::fixtures::variance_shape_pair(d, a.seed);
        for (int mult : m_mults)
            for (int n : n_list) {
                const auto t0 = Clock::now();
                lt::ProtocolConfig cfg;
                cfg.d = d;
                cfg.N = n;
                cfg.m = mult * d * d;
                cfg.seed =
                    lt::RngStream(a.seed).child("cell").child(d).child(mult).child(n).key();
                cfg.poly_f = ident;
                cfg.poly_g = ident;
                cfg.be_a = lt::dilate(fa, 1.0);
                cfg.be_b = lt::dilate(fb, 1.0);
                cfg.threads = a.threads;
                const double var = lt::empirical_variance(cfg, replays);
                const double dd = d;
                const double shape =
                    1.0 + dd * dd / cfg.m + dd * dd * dd * dd / (double(cfg.m) * cfg.m);
                Json rec = base_record(
                    "variance-sweep", a,
                    Json{{"d", d}, {"m", cfg.m}, {"N", n}, {"replays", replays}});
                rec["variance"] = var;
                rec["var_times_N"] = var * n;
                rec["shape"] = shape;
                rec["ratio"] = var * n / shape;
                finish_record(rec, std::nullopt, ms_since(t0));
                out.write(rec);
            }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-party trace estimation simulator"};
    app.require_subcommand(1);

    CommonArgs args;

    std::string f_id = "identity", g_id = "identity", mode = "exact";
    std::string a_file, b_file;
    double encoding_eps = 0.0;
    CLI::App* trace = app.add_subcommand("trace", "estimate tr(f(A) g(B))");
    add_common(trace, args);
    trace->add_option("--f", f_id, "function label for the A side");
    trace->add_option("--g", g_id, "function label for the B side");
    trace->add_option("--a-file", a_file, "matrix file for A (json-dense or csv-complex)");
    trace->add_option("--b-file", b_file, "matrix file for B");
    trace->add_option("--mode", mode, "exact | lipschitz");
    trace->add_option("--encoding-eps", encoding_eps, "perturbation size in lipschitz mode");

    std::string fixture;
    std::string rho_file, sigma_file;
    double lambda_min = 0.1;
    CLI::App* rel = app.add_subcommand("rel-entropy", "estimate tr(rho(ln rho - ln sigma))");
    add_common(rel, args);
    rel->add_option("--fixture", fixture, "diag | diag4 | random (default diag)");
    rel->add_option("--rho-file", rho_file, "density matrix file");
    rel->add_option("--sigma-file", sigma_file, "density matrix file");
    rel->add_option("--lambda-min", lambda_min, "random fixture eigenvalue floor");

    double alpha = 2.0;
    int rank = 0;
    CLI::App* renyi = app.add_subcommand("renyi", "estimate the alpha-Renyi relative entropy");
    add_common(renyi, args);
    renyi->add_option("--alpha", alpha, "order (positive, != 1)");
    renyi->add_option("--rank", rank, "rank bound for alpha < 1 (0 = dimension)");
    renyi->add_option("--fixture", fixture, "diag | random (default diag)");
    renyi->add_option("--rho-file", rho_file, "density matrix file");
    renyi->add_option("--sigma-file", sigma_file, "density matrix file");
    renyi->add_option("--lambda-min", lambda_min, "random fixture eigenvalue floor");

    double sv_min = 0.25;
    CLI::App* lin = app.add_subcommand("linsolve", "solve A x = b componentwise");
    add_common(lin, args);
    lin->add_option("--A-file", a_file, "coefficient matrix file");
    lin->add_option("--b-file", b_file, "right-hand side file (column)");
    lin->add_option("--fixture", fixture, "diag | random (default diag)");
    lin->add_option("--sv-min", sv_min, "random fixture smallest singular value");

    std::string h1_file, h2_file, m_file;
    double t_param = 0.0, inject_eps = 0.0;
    CLI::App* ham = app.add_subcommand("hamsim", "short-time split-Hamiltonian expectation");
    add_common(ham, args);
    ham->add_option("--h1-file", h1_file, "first Hamiltonian part");
    ham->add_option("--h2-file", h2_file, "second Hamiltonian part");
    ham->add_option("--m-file", m_file, "observable");
    ham->add_option("--rho-file", rho_file, "initial state");
    ham->add_option("--fixture", fixture, "commuting | random (default commuting)");
    ham->add_option("--t", t_param, "evolution time (0 = 1/(2 sqrt(d)))");
    ham->add_option("--inject-eps", inject_eps, "evolution-encoding perturbation");

    CLI::App* verify =
        app.add_subcommand("verify-polys", "build and certify the bounded polynomial targets");
    add_common(verify, args);

    std::vector<int> d_list, m_mults, n_list;
    int replays = 200;
    CLI::App* sweep =
        app.add_subcommand("variance-sweep", "estimator variance against the predicted shape");
    add_common(sweep, args);
    sweep->add_option("--d-list", d_list, "dimensions (default 2 4)");
    sweep->add_option("--m-mults", m_mults, "m = mult * d^2 (default 1 4 16)");
    sweep->add_option("--N-list", n_list, "iteration counts (default 25 100)");
    sweep->add_option("--replays", replays, "replications per cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        merge_config(cmd, args);
        if (fixture.empty()) fixture = (cmd == ham) ? "commuting" : "diag";

        if (cmd == trace) return run_trace(args, f_id, g_id, a_file, b_file, mode, encoding_eps);
        if (cmd == rel) return run_rel_entropy(args, rho_file, sigma_file, fixture, lambda_min);
        if (cmd == renyi)
            return run_renyi(args, alpha, rank, rho_file, sigma_file, fixture, lambda_min);
        if (cmd == lin) return run_linsolve(args, a_file, b_file, fixture, sv_min);
        if (cmd == ham)
            return run_hamsim(args, h1_file, h2_file, m_file, rho_file, fixture, t_param,
                              inject_eps);
        if (cmd == verify) return run_verify_polys(args);
        if (cmd == sweep) return run_variance_sweep(args, d_list, m_mults, n_list, replays);
        std::cerr << "unknown command\n";
        return 1;
    } catch (const lt::ApproximationFailureError& e) {
        std::cerr << "approximation failure: " << e.what() << " (best " << e.best_error
                  << " at degree " << e.degree_reached << ")\n";
        return 3;
    } catch (const lt::PreconditionViolationError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 2;
    } catch (const lt::ContractViolationError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 2;
    } catch (const lt::InvalidParameterError& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const lt::UnreliableEstimateError& e) {
        std::cerr << "unreliable estimate: " << e.what() << "\n";
        return 2;
    } catch (const lt::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

#include "potkit/afree.hpp"
#include "potkit/builtins.hpp"
#include "potkit/envelope.hpp"
#include "potkit/errors.hpp"
#include "potkit/field_io.hpp"
#include "potkit/op_io.hpp"
#include "potkit/rank_analysis.hpp"
#include "potkit/spectral.hpp"
#include "potkit/synthesis.hpp"

namespace potkit::cli {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void Report::add_number(const std::string& key, double value) {
    entries.emplace_back(key, format_number(value));
}

Report::Section& Report::section(const std::string& name) {
    sections.push_back({name, {}});
    return sections.back();
}

int Report::exit_code() const {
    if (status == "ok") return 0;
    if (status == "falsified") return 1;
    if (status == "inconclusive") return 2;
    return 3;
}

std::string Report::to_text() const {
    std::string out;
    out += "command: " + command + "\n";
    out += "status: " + status + "\n";
    for (const auto& [k, v] : entries) out += k + ": " + v + "\n";
    for (const auto& sec : sections) {
        out += "[" + sec.name + "]\n";
        for (const auto& line : sec.lines) out += line + "\n";
    }
    return out;
}

namespace {

std::string rational_vector(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += to_string(v[i]);
    }
    return out + ")";
}

void report_rank(Report& report, const RankReport& rr) {
    report.add_count("generic_rank", rr.generic_rank);
    auto& sec = report.section("char_coeffs");
    for (std::size_t j = 0; j < rr.char_coeffs.size(); ++j)
        sec.lines.push_back("a" + std::to_string(j) + ": " + rr.char_coeffs[j].to_string());
}

void report_certificate(Report& report, const Certificate& cert) {
    switch (cert.kind) {
        case Certificate::Kind::Certified:
            report.status = "ok";
            report.add("certificate", "certified");
            report.add_count("depth", cert.depth);
            break;
        case Certificate::Kind::Falsified:
            report.status = "falsified";
            report.add("certificate", "falsified");
            report.add("witness", rational_vector(cert.witness));
            break;
        case Certificate::Kind::Inconclusive:
            report.status = "inconclusive";
            report.add("certificate", "inconclusive");
            report.add_number("min_sampled_value", cert.min_sampled);
            break;
    }
    report.add_count("samples", cert.samples);
}

struct Options {
    std::string op_file, op_file_b, field_file, out_file, out_prefix;
    std::string annihilator_file, potential_file;
    std::string f_expr, eta_text;
    std::vector<std::string> field_files, phi_exprs, params;
    long samples = 100;
    long budget = 200;
    std::uint64_t seed = 0;
    int max_depth = 12;
    double tol = 1e-8;
    bool subtract_mean = false;
    bool no_check = false;
    bool binary = false;
    bool certify = false;
    int grid = 128;
    int modes = 2;
    double margin = 0.3;
    std::string box_text;
};

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(start, comma - start)));
        start = comma + 1;
        if (start > text.size()) break;
    }
    return out;
}

GridField field_from_file(const std::string& path) { return dft_inverse(read_field_file(path)); }

void run_rank(const Options& opt, Report& report) {
    const DiffOp op = read_operator_file(opt.op_file);
    report.add("operator", opt.op_file);
    report.add_count("order", op.order);
    report.add_count("dim_from", op.dim_from);
    report.add_count("dim_to", op.dim_to);
    const RankReport rr = generic_rank(op);
    report_rank(report, rr);
    if (!opt.certify) return;
    auto witness = falsify_constant_rank(op, rr, opt.budget, opt.seed);
    if (witness) {
        report.status = "falsified";
        report.add("certificate", "falsified");
        report.add("witness", rational_vector(*witness));
        return;
    }
    report_certificate(report, certify_constant_rank(op, rr, opt.max_depth));
}

void run_certify(const Options& opt, Report& report) {
    const DiffOp op = read_operator_file(opt.op_file);
    report.add("operator", opt.op_file);
    const RankReport rr = generic_rank(op);
    report.add_count("generic_rank", rr.generic_rank);
    auto witness = falsify_constant_rank(op, rr, opt.budget, opt.seed);
    if (witness) {
        report.status = "falsified";
        report.add("certificate", "falsified");
        report.add("witness", rational_vector(*witness));
        return;
    }
    report_certificate(report, certify_constant_rank(op, rr, opt.max_depth));
}

void run_synthesis(const Options& opt, Report& report, bool potential_direction) {
    const DiffOp op = read_operator_file(opt.op_file);
    report.add("operator", opt.op_file);
    DiffOp result;
    try {
        result = potential_direction ? potential_of(op, !opt.no_check)
                                     : annihilator_of(op, !opt.no_check);
    } catch (const NotConstantRank& e) {
        report.status = "falsified";
        report.add("reason", e.what());
        return;
    }
    report.add_count("order", result.order);
    report.add_count("dim_from", result.dim_from);
    report.add_count("dim_to", result.dim_to);
    report.add("symbol", symbol_of(result).to_string());
    if (!opt.out_file.empty()) {
        write_operator_file(result, opt.out_file);
        report.add("output", opt.out_file);
    }
    const DiffOp& a = potential_direction ? op : result;
    const DiffOp& b = potential_direction ? result : op;
    const VerifyOutcome verified = verify_exact_pair(a, b, opt.samples, opt.seed);
    report.add("symbolic_zero", verified.pair.symbolic_zero ? "1" : "0");
    report.add_count("rank_samples", static_cast<long>(verified.pair.rank_samples.size()));
    if (!verified.ok()) report.status = "falsified";
}

void run_verify(const Options& opt, Report& report) {
    const DiffOp a = read_operator_file(opt.op_file);
    const DiffOp b = read_operator_file(opt.op_file_b);
    report.add("annihilator", opt.op_file);
    report.add("potential", opt.op_file_b);
    const VerifyOutcome outcome = verify_exact_pair(a, b, opt.samples, opt.seed);
    report.add("symbolic_zero", outcome.pair.symbolic_zero ? "1" : "0");
    switch (outcome.status) {
        case VerifyOutcome::Status::Ok:
            report.add("rank_sum", "dim_w");
            break;
        case VerifyOutcome::Status::CompositionNonzero:
            report.status = "falsified";
            report.add("reason", "composition_nonzero");
            report.add("entry", "(" + std::to_string(outcome.bad_row) + "," +
                                    std::to_string(outcome.bad_col) + ")");
            report.add("value", outcome.bad_entry.to_string());
            return;
        case VerifyOutcome::Status::RankSumFailure:
            report.status = "falsified";
            report.add("reason", "rank_sum_failure");
            report.add("xi", rational_vector(outcome.bad_xi));
            report.add_count("rank_a", outcome.bad_rank_a);
            report.add_count("rank_b", outcome.bad_rank_b);
            return;
    }
    auto& sec = report.section("samples");
    sec.lines.push_back("xi,rank_a,rank_b");
    for (const auto& s : outcome.pair.rank_samples)
        sec.lines.push_back(rational_vector(s.xi) + "," + std::to_string(s.rank_a) + "," +
                            std::to_string(s.rank_b));
}

void run_project(const Options& opt, Report& report) {
    const DiffOp a = read_operator_file(opt.op_file);
    const TorusField w = read_field_file(opt.field_file);
    report.add("operator", opt.op_file);
    report.add("field", opt.field_file);
    const AfreeProjector projector(a);
    const TorusField projected = projector.project(w);
    report.add_number("input_l2", w.l2_norm());
    report.add_number("output_l2", projected.l2_norm());
    report.add_number("residual_l2", apply_diffop(a, projected).l2_norm());
    if (!opt.out_file.empty()) {
        write_field_file(projected, opt.out_file, opt.binary);
        report.add("output", opt.out_file);
    }
}

void run_recover(const Options& opt, Report& report) {
    const DiffOp b = read_operator_file(opt.op_file);
    const TorusField w = read_field_file(opt.field_file);
    report.add("operator", opt.op_file);
    report.add("field", opt.field_file);
    RecoverOptions recover_opts;
    recover_opts.subtract_mean = opt.subtract_mean;
    recover_opts.afree_tol = opt.tol;
    DiffOp annihilator;
    if (!opt.annihilator_file.empty()) {
        annihilator = read_operator_file(opt.annihilator_file);
        recover_opts.annihilator = &annihilator;
    }
    const TorusField u = recover_potential(b, w, recover_opts);
    report.add_number("input_l2", w.l2_norm());
    report.add_number("potential_l2", u.l2_norm());
    report.add_number("reconstruction_residual",
                      [&] {
                          TorusField bu = apply_diffop(b, u);
                          double acc = 0.0;
                          const std::size_t np = bu.points();
                          for (std::size_t p = 0; p < np; ++p) {
                              if (p == 0) continue;  // recovery drops the mean
                              for (int c = 0; c < bu.d(); ++c)
                                  acc += std::norm(bu.at(p, c) - w.at(p, c));
                          }
                          return std::sqrt(acc);
                      }());
    if (!opt.out_file.empty()) {
        write_field_file(u, opt.out_file, opt.binary);
        report.add("output", opt.out_file);
    }
}

void run_envelope(const Options& opt, Report& report) {
    const DiffOp b = read_operator_file(opt.op_file);
    const Integrand f = parse_integrand(opt.f_expr, b.dim_to);
    const std::vector<double> eta = parse_csv_doubles(opt.eta_text);
    EnvelopeParams params;
    params.base_grid = opt.grid;
    params.max_mode = opt.modes;
    params.cutoff_margin = opt.margin;
    report.add("potential", opt.op_file);
    report.add("f", opt.f_expr);
    report.add("eta", opt.eta_text);
    report.add_count("budget", opt.budget);
    report.add_count("seed", static_cast<long>(opt.seed));
    const EnvelopeResult result = estimate_envelope(f, eta, b, opt.budget, opt.seed, params);
    report.add_number("f_eta", f.eval(std::span<const double>(eta)));
    report.add_number("value", result.value);
    report.add("diverged", result.diverged ? "1" : "0");
    report.add_count("evals", result.evals);
    report.add_count("best_seed", static_cast<long>(result.best.seed));
    report.add_number("best_amplitude", result.best.amplitude);
    auto& sec = report.section("trace");
    sec.lines.push_back("eval,value,amplitude,best");
    for (const auto& row : result.trace)
        sec.lines.push_back(std::to_string(row.eval) + "," + format_number(row.value) + "," +
                            format_number(row.amplitude) + "," + format_number(row.best));
}

void run_pipeline(const Options& opt, Report& report) {
    const DiffOp a = read_operator_file(opt.op_file);
    report.add("operator", opt.op_file);
    DiffOp b;
    if (!opt.potential_file.empty()) {
        b = read_operator_file(opt.potential_file);
        report.add("potential", opt.potential_file);
    } else {
        b = potential_of(a);
        report.add("potential", "synthesized");
    }
    std::vector<GridField> fields;
    for (const auto& path : opt.field_files) fields.push_back(field_from_file(path));
    const PipelineParams params = parse_pipeline_params(opt.params);
    const PipelineResult result = compactify_sequence(a, b, fields, params);

    auto& sec = report.section("elements");
    std::string header = "index,alpha,step1_margin,mollify_eps,margin,residual_inner";
    for (const auto& phi : result.moment_set) header += ",d_moment(" + phi.name() + ")";
    sec.lines.push_back(header);
    for (std::size_t j = 0; j < result.elements.size(); ++j) {
        const auto& e = result.elements[j];
        std::string line = std::to_string(j + 1) + "," + format_number(e.alpha) + "," +
                           format_number(e.step1_margin) + "," + format_number(e.mollify_eps) +
                           "," + format_number(e.margin) + "," + format_number(e.residual_inner);
        for (double d : e.moment_diffs) line += "," + format_number(d);
        sec.lines.push_back(line);
    }
    if (!opt.out_prefix.empty()) {
        for (std::size_t j = 0; j < result.elements.size(); ++j) {
            const std::string u_path = opt.out_prefix + "_u" + std::to_string(j + 1) + ".af";
            const std::string f_path = opt.out_prefix + "_Bu" + std::to_string(j + 1) + ".af";
            write_field_file(dft_forward(result.elements[j].potential), u_path, opt.binary);
            write_field_file(dft_forward(result.elements[j].field), f_path, opt.binary);
        }
        report.add("output_prefix", opt.out_prefix);
    }
}

void run_moments(const Options& opt, Report& report) {
    std::vector<GridField> fields;
    for (const auto& path : opt.field_files) fields.push_back(field_from_file(path));
    if (fields.empty()) throw IoError("moments: at least one field required");
    std::vector<Integrand> phis;
    for (const auto& expr : opt.phi_exprs) phis.push_back(parse_integrand(expr, fields[0].d()));
    DiffOp op;
    const DiffOp* op_ptr = nullptr;
    if (!opt.op_file.empty()) {
        op = read_operator_file(opt.op_file);
        op_ptr = &op;
        report.add("operator", opt.op_file);
    }
    const SequenceDiagnostics diag = ym_moments(fields, phis, op_ptr);
    auto& sec = report.section("elements");
    std::string header = "index,l2_norm,neg_sobolev_residual";
    for (const auto& phi : phis) header += ",moment(" + phi.name() + ")";
    sec.lines.push_back(header);
    for (std::size_t j = 0; j < diag.elements.size(); ++j) {
        const auto& e = diag.elements[j];
        std::string line = std::to_string(j + 1) + "," + format_number(e.lp_norm) + "," +
                           format_number(e.neg_sobolev_residual);
        for (double m : e.moments) line += "," + format_number(m);
        sec.lines.push_back(line);
    }
    auto& tail = report.section("tail_mass");
    tail.lines.push_back("alpha,sup_tail");
    for (std::size_t k = 0; k < diag.alpha_ladder.size(); ++k)
        tail.lines.push_back(format_number(diag.alpha_ladder[k]) + "," +
                             format_number(diag.tail_mass[k]));
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"constant-rank operator toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto* rank = app.add_subcommand("rank", "generic rank and characteristic coefficients");
    rank->add_option("file", opt.op_file)->required();
    rank->add_flag("--certify", opt.certify, "also run falsification + certification");
    rank->add_option("--max-depth", opt.max_depth);
    rank->add_option("--budget", opt.budget)->default_val(500);
    rank->add_option("--seed", opt.seed);

    auto* certify = app.add_subcommand("certify", "constant-rank certificate");
    certify->add_option("file", opt.op_file)->required();
    certify->add_option("--max-depth", opt.max_depth);
    certify->add_option("--budget", opt.budget)->default_val(500);
    certify->add_option("--seed", opt.seed);

    auto* potential = app.add_subcommand("potential", "synthesize the exact potential");
    potential->add_option("file", opt.op_file)->required();
    potential->add_option("-o,--output", opt.out_file);
    potential->add_flag("--no-check", opt.no_check, "skip the rank-drop falsification pass");
    potential->add_option("--samples", opt.samples);
    potential->add_option("--seed", opt.seed);

    auto* annihilator = app.add_subcommand("annihilator", "synthesize the exact annihilator");
    annihilator->add_option("file", opt.op_file)->required();
    annihilator->add_option("-o,--output", opt.out_file);
    annihilator->add_flag("--no-check", opt.no_check);
    annihilator->add_option("--samples", opt.samples);
    annihilator->add_option("--seed", opt.seed);

    auto* verify = app.add_subcommand("verify", "verify an (annihilator, potential) pair");
    verify->add_option("annihilator", opt.op_file)->required();
    verify->add_option("potential", opt.op_file_b)->required();
    verify->add_option("--samples", opt.samples);
    verify->add_option("--seed", opt.seed);

    auto* project = app.add_subcommand("project", "A-free projection of a periodic field");
    project->add_option("operator", opt.op_file)->required();
    project->add_option("field", opt.field_file)->required();
    project->add_option("-o,--output", opt.out_file);
    project->add_flag("--binary", opt.binary, "write the compact binary field variant");

    auto* recover = app.add_subcommand("recover", "recover a potential from an A-free field");
    recover->add_option("potential", opt.op_file)->required();
    recover->add_option("field", opt.field_file)->required();
    recover->add_option("-o,--output", opt.out_file);
    recover->add_flag("--binary", opt.binary);
    recover->add_flag("--subtract-mean", opt.subtract_mean);
    recover->add_option("--annihilator", opt.annihilator_file);
    recover->add_option("--tol", opt.tol);

    auto* envelope = app.add_subcommand("envelope", "estimate the quasiconvex envelope");
    envelope->add_option("potential", opt.op_file)->required();
    envelope->add_option("--f", opt.f_expr)->required();
    envelope->add_option("--eta", opt.eta_text)->required();
    envelope->add_option("--budget", opt.budget);
    envelope->add_option("--seed", opt.seed);
    envelope->add_option("--grid", opt.grid);
    envelope->add_option("--modes", opt.modes);
    envelope->add_option("--margin", opt.margin);

    auto* pipeline = app.add_subcommand("pipeline", "compact-support potential pipeline");
    pipeline->add_option("operator", opt.op_file)->required();
    pipeline->add_option("--fields", opt.field_files)->required();
    pipeline->add_option("--potential", opt.potential_file);
    pipeline->add_option("--param", opt.params);
    pipeline->add_option("-o,--output-prefix", opt.out_prefix);
    pipeline->add_flag("--binary", opt.binary);

    auto* moments = app.add_subcommand("moments", "Young-measure moment diagnostics");
    moments->add_option("--fields", opt.field_files)->required();
    moments->add_option("--phi", opt.phi_exprs)->required();
    moments->add_option("--op", opt.op_file);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return 3;
    }

    Report report;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (app.got_subcommand(rank)) {
            report.command = "rank";
            run_rank(opt, report);
        } else if (app.got_subcommand(certify)) {
            report.command = "certify";
            run_certify(opt, report);
        } else if (app.got_subcommand(potential)) {
            report.command = "potential";
            run_synthesis(opt, report, true);
        } else if (app.got_subcommand(annihilator)) {
            report.command = "annihilator";
            run_synthesis(opt, report, false);
        } else if (app.got_subcommand(verify)) {
            report.command = "verify";
            run_verify(opt, report);
        } else if (app.got_subcommand(project)) {
            report.command = "project";
            run_project(opt, report);
        } else if (app.got_subcommand(recover)) {
            report.command = "recover";
            run_recover(opt, report);
        } else if (app.got_subcommand(envelope)) {
            report.command = "envelope";
            run_envelope(opt, report);
        } else if (app.got_subcommand(pipeline)) {
            report.command = "pipeline";
            run_pipeline(opt, report);
        } else if (app.got_subcommand(moments)) {
            report.command = "moments";
            run_moments(opt, report);
        }
    } catch (const ParseError& e) {
        report.status = "error";
        report.add("error", std::string(e.what()) + " at offset " + std::to_string(e.offset));
    } catch (const std::exception& e) {
        report.status = "error";
        report.add("error", e.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

    out << report.to_text();
    err << "wall_ms: " << report.wall_ms << "\n";
    return report.exit_code();
}

}  // namespace potkit::cli

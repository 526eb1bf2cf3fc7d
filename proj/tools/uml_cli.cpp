// Command-line front end: exact measures on Q_p^n with s-adic values.
// All numeric output is exact rational or cyclotomic text; norms print as
// base^exponent strings.  Errors go to stderr as a single "error: ..." line.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "uml/checks.hpp"
#include "uml/config.hpp"
#include "uml/serialize.hpp"

using namespace uml;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> v;
    for (const auto& s : split(text, ',')) v.push_back(parse_rat(s));
    return v;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> v;
    for (const auto& s : split(text, ',')) {
        size_t used = 0;
        v.push_back(std::stol(s, &used));
        if (used != s.size()) throw std::runtime_error("bad integer: " + s);
    }
    return v;
}

// "c1,c2:k1,k2" -> ball with those centers and radius exponents
Ball parse_ball(const std::string& text) {
    auto mid = text.find(':');
    if (mid == std::string::npos)
        throw std::runtime_error("ball spec must look like center:radius_exp");
    Ball b{parse_rat_list(text.substr(0, mid)), parse_long_list(text.substr(mid + 1))};
    if (b.c.size() != b.k.size())
        throw std::runtime_error("ball spec: center/radius_exp length mismatch");
    return b;
}

// "a,b;c,d" -> rows of a square matrix
std::vector<std::vector<Rat>> parse_matrix(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : split(text, ';')) rows.push_back(parse_rat_list(r));
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw std::runtime_error("matrix must be square");
    return rows;
}

void guard_dim(size_t d) {
    if ((long)d > max_dim())
        throw std::runtime_error("dimension exceeds UML_MAX_DIM = " + std::to_string(max_dim()));
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = json_text(j);
    if (out_path.empty())
        std::cout << text;
    else
        save_text(out_path, text);
}

CellMeasure load_measure(const std::string& path) {
    CellMeasure m = measure_from_json(load_json(path));
    guard_dim(m.dim());
    return m;
}

std::string value_line(const PrimePair& P, const Rat& v) {
    return rat_text(v) + "  |.|_s = " + s_norm(P, v).str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact measures on Q_p^n with s-adic values"};
    app.require_subcommand(1);

    // ---- haar ----
    std::string haar_ball = "0:0", haar_out;
    long haar_p = 2, haar_s = 3;
    auto* c_haar = app.add_subcommand("haar", "emit the unit-mass Haar measure on a ball");
    c_haar->add_option("--p", haar_p, "residue prime of the base field");
    c_haar->add_option("--s", haar_s, "prime of the value field");
    c_haar->add_option("--ball", haar_ball, "ball spec center:radius_exp, comma lists per coordinate");
    c_haar->add_option("--out", haar_out, "write the measure file here instead of stdout");
    c_haar->callback([&] {
        PrimePair P{haar_p, haar_s};
        Ball b = parse_ball(haar_ball);
        guard_dim(b.dim());
        emit(measure_to_json(CellMeasure::uniform_on(P, b, Rat(1))), haar_out);
    });

    // ---- shellmeasure ----
    long sm_p = 2, sm_s = 3, sm_n = 1, sm_jmin = -8;
    bool sm_norm = false;
    std::string sm_out;
    auto* c_shell = app.add_subcommand("shellmeasure", "emit the shell-density measure window");
    c_shell->add_option("--p", sm_p, "residue prime of the base field");
    c_shell->add_option("--s", sm_s, "prime of the value field");
    c_shell->add_option("--n", sm_n, "family index")->required();
    c_shell->add_option("--jmin", sm_jmin, "lowest shell order kept in the window");
    c_shell->add_flag("--normalized", sm_norm, "divide by the closed-form total mass");
    c_shell->add_option("--out", sm_out, "write the measure file here instead of stdout");
    c_shell->callback([&] {
        PrimePair P{sm_p, sm_s};
        if (sm_jmin > sm_n) throw std::runtime_error("--jmin must be <= n");
        Rat scale = sm_norm ? Rat(1) / ShellFactor::raw_total(P, sm_n) : Rat(1);
        std::vector<std::pair<Ball, Rat>> cells;
        for (long j = sm_jmin; j < sm_n; ++j) {
            Rat d = scale * ShellFactor::raw_density(P, j, sm_n);
            for (const auto& c : sphere(P.p, j).cells) cells.push_back({c, d});
        }
        cells.push_back({ord_ball(sm_n), scale * ShellFactor::raw_density(P, sm_n, sm_n)});
        emit(measure_to_json(CellMeasure::make(P, cells)), sm_out);
    });

    // ---- theta ----
    std::string th_measure, th_z, th_out;
    long th_grid = -1;
    auto* c_theta = app.add_subcommand("theta", "characteristic functional of a measure");
    c_theta->add_option("--measure", th_measure, "measure file")->required();
    c_theta->add_option("--z", th_z, "single dual point, comma list per coordinate");
    c_theta->add_option("--grid", th_grid, "emit the full table on the level-m dual grid");
    c_theta->add_option("--out", th_out, "write the table file here instead of stdout");
    c_theta->callback([&] {
        CellMeasure mu = load_measure(th_measure);
        if (!th_z.empty()) {
            std::vector<Rat> xi = parse_rat_list(th_z);
            if (xi.size() != mu.dim()) throw std::runtime_error("--z arity != measure dimension");
            CycloValue v = theta(mu, xi);
            if (v.is_rational()) {
                std::cout << rat_text(v.rational_part()) << "\n";
                std::cout << "|.|_s = " << s_norm(mu.P, v.rational_part()).str() << "\n";
            } else {
                std::cout << v.str() << "\n";
            }
            return;
        }
        long m = th_grid >= 0 ? th_grid : default_grid_level();
        emit(theta_to_json(mu.P, theta_table(mu, m)), th_out);
    });

    // ---- invert ----
    std::string inv_table, inv_out;
    long inv_level = -1;
    auto* c_inv = app.add_subcommand("invert", "reconstruct a measure from its dual-grid table");
    c_inv->add_option("--table", inv_table, "table file")->required();
    c_inv->add_option("--level", inv_level, "assert the table is at this grid level");
    c_inv->add_option("--out", inv_out, "write the measure file here instead of stdout");
    c_inv->callback([&] {
        auto [P, t] = theta_from_json(load_json(inv_table));
        if (inv_level >= 0 && t.level != inv_level)
            throw std::runtime_error("table level is " + std::to_string(t.level));
        emit(measure_to_json(invert_theta(P, t)), inv_out);
    });

    // ---- convolve / product ----
    std::string two_a, two_b, two_out;
    for (const char* name : {"convolve", "product"}) {
        auto* c = app.add_subcommand(name, std::string(name) == "convolve"
                                               ? "additive convolution of two measures"
                                               : "product measure on the coordinate product");
        c->add_option("--a", two_a, "left measure file")->required();
        c->add_option("--b", two_b, "right measure file")->required();
        c->add_option("--out", two_out, "write the measure file here instead of stdout");
        bool conv = std::string(name) == "convolve";
        c->callback([&, conv] {
            CellMeasure a = load_measure(two_a), b = load_measure(two_b);
            CellMeasure r = conv ? a.convolve(b) : a.product(b);
            guard_dim(r.dim());
            emit(measure_to_json(r), two_out);
        });
    }

    // ---- kakutani ----
    std::string kk_factors;
    long kk_inspect = 12;
    long kk_tol = 40;
    auto* c_kk = app.add_subcommand("kakutani", "equivalence/singularity of a product family");
    c_kk->add_option("--factors", kk_factors, "factor-exponent file")->required();
    c_kk->add_option("--tol", kk_tol, "singularity certificate threshold, as an exponent of s");
    c_kk->add_option("--inspect", kk_inspect, "how many partial products to report");
    c_kk->callback([&] {
        auto [s, fam] = beta_family_from_json(load_json(kk_factors));
        KakutaniReport r = kakutani_classify(fam, kk_inspect, Rat(kk_tol));
        std::cout << "verdict: " << r.text() << "\n";
        if (r.verdict == Kakutani::Equivalent)
            std::cout << "product = " << s.str() << "^" << rat_str(r.product) << "\n";
        if (r.verdict == Kakutani::Singular)
            std::cout << "certificate N = " << r.certificate_N << " (partials below "
                      << s.str() << "^-" << kk_tol << ")\n";
        std::cout << "partial exponents:";
        for (const auto& e : r.partial_exponents) std::cout << " " << rat_str(e);
        std::cout << "\n";
    });

    // ---- rho ----
    long rho_p = 2, rho_s = 3, rho_trunc = 1;
    std::string rho_a, rho_x;
    auto* c_rho = app.add_subcommand("rho", "shift-density cocycle of the shell family");
    c_rho->add_option("--p", rho_p, "residue prime of the base field");
    c_rho->add_option("--s", rho_s, "prime of the value field");
    c_rho->add_option("--a", rho_a, "shift")->required();
    c_rho->add_option("--x", rho_x, "evaluation point")->required();
    c_rho->add_option("--trunc", rho_trunc, "family index")->required();
    c_rho->callback([&] {
        PrimePair P{rho_p, rho_s};
        Rat v = rho_shift(P, ShellFactor{rho_trunc, true}, parse_rat(rho_a), parse_rat(rho_x));
        std::cout << value_line(P, v) << "\n";
    });

    // ---- transform ----
    std::string tr_matrix, tr_measure, tr_x;
    long tr_grid = -1;
    auto* c_tr = app.add_subcommand("transform", "pushforward density under an invertible matrix");
    c_tr->add_option("--matrix", tr_matrix, "rows a,b;c,d of an invertible matrix")->required();
    c_tr->add_option("--measure", tr_measure, "measure file")->required();
    c_tr->add_option("--x", tr_x, "evaluation point, comma list per coordinate")->required();
    c_tr->add_option("--grid", tr_grid, "grid level for the preimage oracle comparison");
    c_tr->callback([&] {
        CellMeasure mu = load_measure(tr_measure);
        auto U = parse_matrix(tr_matrix);
        if (U.size() != mu.dim()) throw std::runtime_error("matrix size != measure dimension");
        std::vector<Rat> x = parse_rat_list(tr_x);
        if (x.size() != mu.dim()) throw std::runtime_error("--x arity != measure dimension");
        Rat det = mat_det(U);
        if (det == 0) throw std::runtime_error("matrix is singular");
        Rat v = rpow(mu.P.p, ord_rat(mu.P.p, det)) * mu.density_at(mat_apply(mat_inv(U), x));
        std::cout << "density = " << value_line(mu.P, v) << "\n";
        long maxk = 0;
        for (const auto& [b, d] : mu.cells)
            for (long k : b.k) maxk = std::max(maxk, k);
        long wi = std::max(0L, -mat_min_ord(mu.P.p, mat_inv(U)));
        long w = std::max(0L, -mat_min_ord(mu.P.p, U));
        long G = std::max(tr_grid >= 0 ? tr_grid : default_grid_level(), maxk + wi + w);
        TransformResult r = transform_density(mu, U, G);
        std::cout << "oracle agrees at grid level " << G << ": " << (r.agree ? "yes" : "no")
                  << "\n";
        if (!r.agree) throw std::runtime_error("formula disagrees with preimage oracle");
    });

    // ---- pd ----
    std::string pd_f, pd_x, pd_domain, pd_T;
    long pd_tnorm = 1, pd_depth = 0, pd_s = 3;
    auto* c_pd = app.add_subcommand("pd", "kernel operator of a step function, symbolic in T");
    c_pd->add_option("--f", pd_f, "step-function file")->required();
    c_pd->add_option("--s", pd_s, "prime of the value field");
    c_pd->add_option("--x", pd_x, "evaluation point")->required();
    c_pd->add_option("--domain", pd_domain, "set file restricting the integration domain");
    c_pd->add_option("--tnorm", pd_tnorm, "exponent e: report convergence for |T|_s <= s^-e");
    c_pd->add_option("--T", pd_T, "evaluate exactly at this rational T");
    c_pd->add_option("--depth", pd_depth, "also report the partial sum with this many tail terms");
    c_pd->callback([&] {
        auto [p, f] = step_from_json(load_json(pd_f));
        PrimePair P{p, pd_s};
        if (f.dim() != 1) throw std::runtime_error("kernel operator is one-dimensional");
        Rat x = parse_rat(pd_x);
        LaurentT L;
        if (!pd_domain.empty()) {
            auto [pd_pp, dom] = set_from_json(load_json(pd_domain));
            if (pd_pp != p) throw std::runtime_error("domain prime != function prime");
            L = pd_evaluate(P, f, x, &dom);
        } else {
            L = pd_evaluate(P, f, x);
        }
        std::cout << "expansion: " << L.str() << "\n";
        std::cout << "converges for |T|_s <= " << P.s.str() << "^-" << pd_tnorm << ": "
                  << (L.converges_for_norm(P.s, Rat(pd_tnorm)) ? "yes" : "no") << "\n";
        if (!pd_T.empty()) {
            Rat T = parse_rat(pd_T);
            std::string val = value_line(P, L.evaluate(P.s, T));
            std::cout << "value at T = " << rat_text(T) << ": " << val << "\n";
            if (pd_depth > 0)
                std::cout << "partial (depth " << pd_depth << "): "
                          << value_line(P, L.partial_evaluate(T, pd_depth)) << "\n";
        }
    });

    // ---- pdshift ----
    std::string ps_measure, ps_a, ps_set, ps_T;
    long ps_tnorm = 1, ps_depth = 0;
    auto* c_ps = app.add_subcommand("pdshift", "kernel pairing of shifted measure differences");
    c_ps->add_option("--measure", ps_measure, "measure file")->required();
    c_ps->add_option("--a", ps_a, "shift direction")->required();
    c_ps->add_option("--set", ps_set, "set file the differences are measured on")->required();
    c_ps->add_option("--tnorm", ps_tnorm, "exponent e: report convergence for |T|_s <= s^-e");
    c_ps->add_option("--T", ps_T, "evaluate exactly at this rational T");
    c_ps->add_option("--depth", ps_depth, "also report the partial sum with this many tail terms");
    c_ps->callback([&] {
        CellMeasure mu = load_measure(ps_measure);
        if (mu.dim() != 1) throw std::runtime_error("shift pairing is one-dimensional");
        auto [sp, S] = set_from_json(load_json(ps_set));
        if (sp != mu.P.p) throw std::runtime_error("set prime != measure prime");
        LaurentT L = pd_measure_shift(mu, parse_rat(ps_a), S);
        std::cout << "expansion: " << L.str() << "\n";
        std::cout << "converges for |T|_s <= " << mu.P.s.str() << "^-" << ps_tnorm << ": "
                  << (L.converges_for_norm(mu.P.s, Rat(ps_tnorm)) ? "yes" : "no") << "\n";
        if (!ps_T.empty()) {
            Rat T = parse_rat(ps_T);
            std::string val = value_line(mu.P, L.evaluate(mu.P.s, T));
            std::cout << "value at T = " << rat_text(T) << ": " << val << "\n";
            if (ps_depth > 0)
                std::cout << "partial (depth " << ps_depth << "): "
                          << value_line(mu.P, L.partial_evaluate(T, ps_depth)) << "\n";
        }
    });

    // ---- weakdist ----
    auto* c_wd = app.add_subcommand("weakdist", "finite-dimensional tower diagnostics");
    c_wd->require_subcommand(1);

    std::string wd_tower, wd_probe;
    auto* c_chk = c_wd->add_subcommand("check", "projector consistency of a factor tower");
    c_chk->add_option("--tower", wd_tower, "tower file")->required();
    c_chk->add_option("--probe", wd_probe, "set file used as the reported cylinder");
    c_chk->callback([&] {
        Tower T = tower_from_json(load_json(wd_tower));
        ClopenSet probe = ClopenSet{{Ball::unit(1)}};
        if (!wd_probe.empty()) {
            auto [pp, S] = set_from_json(load_json(wd_probe));
            if (pp != T.P.p) throw std::runtime_error("probe prime != tower prime");
            probe = S;
        }
        ConsistencyReport r = consistency_check(T, probe);
        std::cout << "consistent: " << (r.consistent ? "yes" : "no") << "\n";
        if (!r.consistent) {
            std::cout << "witness factor index = " << r.witness_index
                      << ", mass = " << rat_text(r.witness_mass) << "\n";
            std::cout << "cylinder value below = " << rat_text(r.level_lo)
                      << ", above = " << rat_text(r.level_hi) << "\n";
            throw std::runtime_error("tower is inconsistent");
        }
    });

    std::string wd_tower2, wd_radii = "-2,-4,-6,-8";
    auto* c_tgt = c_wd->add_subcommand("tight", "escape-of-mass profile along growing balls");
    c_tgt->add_option("--tower", wd_tower2, "tower file")->required();
    c_tgt->add_option("--radii", wd_radii, "comma list of radius exponents, decreasing");
    c_tgt->callback([&] {
        Tower T = tower_from_json(load_json(wd_tower2));
        TightnessReport r = tightness_check(T, parse_long_list(wd_radii));
        for (const auto& [rad, nv] : r.profile)
            std::cout << "r = " << rad << "  escape <= " << nv.str() << "\n";
        std::cout << "certified: " << (r.certified ? "yes" : "no") << "\n";
        if (!r.certified) throw std::runtime_error("escape profile is not shrinking");
    });

    long sx_p = 2, sx_s = 3, sx_q = 2;
    std::string sx_ords = "0,1,2,3,4,5", sx_reading = "quotient";
    std::vector<std::string> sx_fs;
    auto* c_sx = c_wd->add_subcommand("sxi", "scale-kernel functional trend toward the volume integral");
    c_sx->add_option("--p", sx_p, "residue prime of the base field");
    c_sx->add_option("--s", sx_s, "prime of the value field");
    c_sx->add_option("--q", sx_q, "kernel decay exponent");
    c_sx->add_option("--ords", sx_ords, "comma list of scale-parameter orders");
    c_sx->add_option("--f", sx_fs, "step-function file, one per coordinate")->required();
    c_sx->add_option("--reading", sx_reading, "quotient | product: reading of the two-argument order");
    c_sx->callback([&] {
        PrimePair P{sx_p, sx_s};
        std::vector<StepFunction> fs;
        for (const auto& path : sx_fs) {
            auto [fp, f] = step_from_json(load_json(path));
            if (fp != P.p) throw std::runtime_error("step-function prime != --p");
            if (f.dim() != 1) throw std::runtime_error("per-coordinate functions are one-dimensional");
            fs.push_back(f);
        }
        OrdReading rd;
        if (sx_reading == "quotient")
            rd = OrdReading::Quotient;
        else if (sx_reading == "product")
            rd = OrdReading::Product;
        else
            throw std::runtime_error("--reading must be quotient or product");
        SXiReport r = s_xi_trend(P, sx_q, parse_long_list(sx_ords), fs, rd);
        std::cout << "reading: " << reading_name(r.reading) << "\n";
        std::cout << "limit = " << value_line(P, r.limit) << "\n";
        for (const auto& smp : r.samples)
            std::cout << "ord(xi) = " << smp.xi_ord << "  value = " << rat_text(smp.value)
                      << "  gap = " << smp.gap.str() << "\n";
        std::cout << "certified: " << (r.certified ? "yes" : "no") << "\n";
        if (!r.certified) throw std::runtime_error("gap schedule is not shrinking");
    });

    // ---- selftest ----
    auto* c_self = app.add_subcommand("selftest", "run the verification battery");
    c_self->callback([&] {
        int failures = print_check_lines(run_all_checks(), std::cout);
        if (failures > 0)
            throw std::runtime_error(std::to_string(failures) + " check(s) failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

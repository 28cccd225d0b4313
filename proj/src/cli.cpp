#include "hlp/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <optional>
#include <ostream>

#include "hlp/error.hpp"
#include "hlp/hankel.hpp"
#include "hlp/io.hpp"
#include "hlp/onef2.hpp"
#include "hlp/parallel.hpp"
#include "hlp/version.hpp"
#include "hlp/zeros.hpp"

namespace hlp {

namespace {

// Transform selection shared by ht, pfe-verify, sample-reconstruct, zeros, rayleigh.
struct SpecArgs {
    std::optional<double> nu;
    std::string weight;
    std::string weight_file;
    std::optional<double> lambda;
    std::string onef2;

    void attach(CLI::App* app) {
        app->add_option("--nu", nu, "Hankel order nu > -1");
        app->add_option("--weight", weight, "weight: beta:C,p,q | step:0,v0;b1,v1;... | table:path.csv");
        app->add_option("--weight-file", weight_file, "CSV weight table with header t,f");
        app->add_option("--lambda", lambda, "Bessel weight: H_nu(f) = Jbar_lambda (lambda > nu)");
        app->add_option("--onef2", onef2, "1F2 triple a,b,c via its Hankel representation");
    }

    TransformSpec build() const {
        int chosen = !weight.empty() + !weight_file.empty() + lambda.has_value() + !onef2.empty();
        if (chosen != 1) throw DomainError("give exactly one of --weight, --weight-file, --lambda, --onef2");
        if (!onef2.empty()) {
            if (nu) throw DomainError("--onef2 fixes nu = c - 1; do not pass --nu");
            auto v = parse_real_list(onef2);
            if (v.size() != 3) throw DomainError("--onef2 expects a,b,c");
            return onef2_transform(OneF2Params{v[0], v[1], v[2]});
        }
        if (!nu) throw DomainError("--nu is required");
        if (lambda) return bessel_lambda_spec(*nu, *lambda);
        if (!weight_file.empty()) return TransformSpec(*nu, read_weight_table(weight_file));
        return TransformSpec(*nu, parse_weight(weight));
    }
};

OneF2Params triple(const std::string& text) {
    auto v = parse_real_list(text);
    if (v.size() != 3) throw DomainError("expected a,b,c");
    return {v[0], v[1], v[2]};
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::string json_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s + "]";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"hankel-lp: zeros of finite Hankel transforms and Laguerre-Polya classification of 1F2"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    std::string config_path;
    int threads = -1;
    app.add_option("--config", config_path, "key=value run configuration file");
    app.add_option("--threads", threads, "cap on OpenMP threads (overrides config)");

    // bessel-zeros
    auto* bz = app.add_subcommand("bessel-zeros", "zeros j_{mu,m} of Jbar_mu with brackets (CSV)");
    double bz_mu = 0.0;
    int bz_count = 0;
    std::string bz_out;
    bz->add_option("--mu", bz_mu, "order mu > -1")->required();
    bz->add_option("--count", bz_count, "number of zeros (default: config zero_count)");
    bz->add_option("--out", bz_out, "output path (default stdout)");

    // ht
    auto* ht = app.add_subcommand("ht", "evaluate the normalized transform H_nu(f)(z)");
    SpecArgs ht_spec;
    ht_spec.attach(ht);
    std::vector<std::string> ht_z;
    std::string ht_out, ht_format;
    bool ht_deriv_flag = false;
    ht->add_option("--z", ht_z, "evaluation points (x, x+yi); repeat or comma-separate")->required()->delimiter(',');
    ht->add_flag("--deriv", ht_deriv_flag, "evaluate the derivative d/dz (real z only)");
    ht->add_option("--format", ht_format, "csv | json");
    ht->add_option("--out", ht_out, "output path");

    // pfe-verify
    auto* pv = app.add_subcommand("pfe-verify", "partial-fraction expansion residual at one point (JSON)");
    SpecArgs pv_spec;
    pv_spec.attach(pv);
    std::optional<double> pv_mu;
    std::string pv_z = "3.7", pv_out;
    int pv_N = 0;
    pv->add_option("--mu", pv_mu, "expansion order mu (default nu)");
    pv->add_option("--z", pv_z, "evaluation point");
    pv->add_option("--N", pv_N, "number of poles (default: config pfe_terms)");
    pv->add_option("--out", pv_out, "output path");

    // sample-reconstruct
    auto* sr = app.add_subcommand("sample-reconstruct", "reconstruct H from samples at j_{mu,m} (CSV)");
    SpecArgs sr_spec;
    sr_spec.attach(sr);
    std::optional<double> sr_mu;
    std::vector<double> sr_z;
    std::string sr_out;
    int sr_N = 0;
    sr->add_option("--mu", sr_mu, "sampling order mu (default nu)");
    sr->add_option("--z", sr_z, "evaluation points")->required()->delimiter(',');
    sr->add_option("--N", sr_N, "number of samples (default: config pfe_terms)");
    sr->add_option("--out", sr_out, "output path");

    // zeros
    auto* zc = app.add_subcommand("zeros", "interlaced positive zeros of H_nu(f) (CSV m,lo,hi,zeta)");
    SpecArgs zc_spec;
    zc_spec.attach(zc);
    std::optional<double> zc_mu;
    int zc_count = 0;
    std::string zc_out, zc_format;
    zc->add_option("--mu", zc_mu, "bracketing Bessel order (default nu)");
    zc->add_option("--count", zc_count, "number of zeros (default: config zero_count)");
    zc->add_option("--format", zc_format, "csv | json");
    zc->add_option("--out", zc_out, "output path");

    // rayleigh
    auto* ry = app.add_subcommand("rayleigh", "Rayleigh sums Delta_k = sum zeta^-(2k+2) by both routes (JSON)");
    SpecArgs ry_spec;
    ry_spec.attach(ry);
    int ry_k = 0, ry_count = 0;
    std::string ry_out;
    ry->add_option("--k", ry_k, "highest order K");
    ry->add_option("--count", ry_count, "zeros for the direct route (default: config zero_count)");
    ry->add_option("--out", ry_out, "output path");

    // lp-classify
    auto* lc = app.add_subcommand("lp-classify", "classify 1F2(a; b, c; -z^2/4) (JSON verdict)");
    std::string lc_triple;
    std::optional<double> lc_a, lc_b, lc_c;
    lc->add_option("params", lc_triple, "a,b,c");
    lc->add_option("--a", lc_a, "numerator parameter");
    lc->add_option("--b", lc_b, "first denominator parameter");
    lc->add_option("--c", lc_c, "second denominator parameter");
    bool lc_transfer = false;
    lc->add_flag("--transfer", lc_transfer, "also search a transference path (shift budget 8)");

    // region-plot
    auto* rp = app.add_subcommand("region-plot", "(b, c) region grid for fixed a (SVG + CSV)");
    double rp_a = 0.0;
    std::vector<double> rp_b, rp_c;
    int rp_res = 200;
    std::string rp_out = "region";
    rp->add_option("--a", rp_a, "numerator parameter a")->required();
    rp->add_option("--b-range", rp_b, "lo,hi")->delimiter(',')->expected(2);
    rp->add_option("--c-range", rp_c, "lo,hi")->delimiter(',')->expected(2);
    rp->add_option("--resolution", rp_res, "cells per axis (<= 2000)");
    rp->add_option("--out", rp_out, "output prefix: writes PREFIX.svg and PREFIX.csv");

    // complex-count
    auto* cc = app.add_subcommand("complex-count", "zeros of 1F2 in a rectangle by the argument principle");
    std::string cc_triple;
    std::optional<double> cc_a, cc_b, cc_c;
    std::vector<double> cc_rect{0.0, 40.0, 0.05, 40.0};
    bool cc_quadrants = false;
    cc->add_option("params", cc_triple, "a,b,c");
    cc->add_option("--a", cc_a, "numerator parameter");
    cc->add_option("--b", cc_b, "first denominator parameter");
    cc->add_option("--c", cc_c, "second denominator parameter");
    cc->add_option("--rect", cc_rect, "x0,x1,y0,y1")->delimiter(',')->expected(4);
    cc->add_flag("--quadrants", cc_quadrants, "sum over the rectangle and its reflections in both axes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto params_from = [](const std::string& t, const std::optional<double>& a, const std::optional<double>& b,
                          const std::optional<double>& c) {
        if (!t.empty()) return triple(t);
        if (!a || !b || !c) throw DomainError("give a,b,c or all of --a --b --c");
        return OneF2Params{*a, *b, *c};
    };

    struct ThreadGuard {
        ~ThreadGuard() { set_thread_limit(0); }
    } guard;

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (threads >= 0) cfg.threads = threads;
        set_thread_limit(cfg.threads);
        auto dest = [&](const std::string& flag) { return flag.empty() ? cfg.output : flag; };
        auto fmt_of = [&](const std::string& flag) {
            std::string f = flag.empty() ? cfg.format : flag;
            if (f != "csv" && f != "json") throw DomainError("format must be csv or json");
            return f;
        };

        if (*bz) {
            int M = bz_count > 0 ? bz_count : cfg.zero_count;
            ZeroTable t = zero_table(bz_mu, M);
            std::string s = "m,j_mu_m,bracket_lo,bracket_hi\n";
            for (int m = 1; m <= M; ++m)
                s += fmt::format("{},{},{},{}\n", m, num(t(m)), num(t.brackets[m - 1].first), num(t.brackets[m - 1].second));
            write_output(dest(bz_out), s, out);
        } else if (*ht) {
            TransformSpec s = ht_spec.build();
            std::string f = fmt_of(ht_format);
            std::string text = f == "csv" ? "z_re,z_im,value_re,value_im,error,within_tol\n" : "[";
            bool first = true;
            for (const auto& zt : ht_z) {
                cplx z = parse_complex(zt);
                cplx v;
                double e;
                if (ht_deriv_flag) {
                    if (z.imag() != 0.0) throw DomainError("--deriv supports real z only");
                    auto d = ht_deriv(s, z.real());
                    v = d.value;
                    e = d.error;
                } else if (cfg.series_terms > 0) {
                    auto r = ht_series_eval(s, z, cfg.series_terms);
                    v = r.value;
                    e = r.truncation_error + r.rounding_error;
                } else {
                    auto r = ht_eval(s, z);
                    v = r.value;
                    e = r.error;
                }
                bool ok = e <= cfg.eval_tol * std::max(1.0, std::abs(v));
                if (f == "csv")
                    text += fmt::format("{},{},{},{},{},{}\n", num(z.real()), num(z.imag()), num(v.real()), num(v.imag()),
                                        num(e), ok ? "true" : "false");
                else
                    text += fmt::format("{}{{\"z\":[{},{}],\"value\":[{},{}],\"error\":{},\"within_tol\":{}}}",
                                        first ? "" : ",", num(z.real()), num(z.imag()), num(v.real()), num(v.imag()),
                                        num(e), ok ? "true" : "false");
                first = false;
            }
            if (f == "json") text += "]\n";
            write_output(dest(ht_out), text, out);
        } else if (*pv) {
            TransformSpec s = pv_spec.build();
            double mu = pv_mu.value_or(s.nu);
            int N = pv_N > 0 ? pv_N : cfg.pfe_terms;
            cplx z = parse_complex(pv_z);
            PfeExpansion e = build_pfe(s, mu, N);
            // The expansion represents H(z) / (z Jbar_mu(z)).
            cplx direct = ht_eval(s, z).value / (z * jbar_eval(mu, z));
            auto series = pfe_eval(e, z);
            double residual = std::abs(direct - series.value);
            std::string text = fmt::format(
                "{{\"nu\":{},\"mu\":{},\"N\":{},\"z\":[{},{}],\"h_over_zjbar\":[{},{}],\"pfe\":[{},{}],\"residual\":{},"
                "\"tail_estimate\":{},\"decay_exponent\":{},\"decay_ok\":{},\"tolerance\":{},\"pass\":{}}}\n",
                num(s.nu), num(mu), N, num(z.real()), num(z.imag()), num(direct.real()), num(direct.imag()),
                num(series.value.real()), num(series.value.imag()), num(residual), num(series.error),
                std::isnan(e.decay_exponent) ? std::string("null") : num(e.decay_exponent), e.decay_ok ? "true" : "false",
                num(cfg.pfe_tail_tol), residual <= cfg.pfe_tail_tol ? "true" : "false");
            write_output(dest(pv_out), text, out);
        } else if (*sr) {
            TransformSpec s = sr_spec.build();
            double mu = sr_mu.value_or(s.nu);
            int N = sr_N > 0 ? sr_N : cfg.pfe_terms;
            SampleSet samples = make_samples(s, mu, N);
            std::string text = "z,reconstructed,direct,abs_error\n";
            for (double z : sr_z) {
                double rec = sampling_reconstruct(s.nu, mu, samples, cplx(z, 0.0)).real();
                double dir = ht_eval(s, z).value;
                text += fmt::format("{},{},{},{}\n", num(z), num(rec), num(dir), num(std::fabs(rec - dir)));
            }
            write_output(dest(sr_out), text, out);
        } else if (*zc) {
            TransformSpec s = zc_spec.build();
            int M = zc_count > 0 ? zc_count : cfg.zero_count;
            ZeroList z = locate_zeros(s, M, zc_mu.value_or(s.nu), cfg.root_tol);
            std::string text = fmt_of(zc_format) == "csv"
                                   ? zeros_to_csv(z)
                                   : fmt::format("{{\"mu\":{},\"case\":{},\"zeta\":{}}}\n", num(z.mu), z.sign_case,
                                                 json_array(z.zeta));
            write_output(dest(zc_out), text, out);
        } else if (*ry) {
            TransformSpec s = ry_spec.build();
            if (ry_k < 0) throw DomainError("--k must be >= 0");
            RayleighSums r = rayleigh_sums(s, ry_k, ry_count > 0 ? ry_count : cfg.zero_count);
            write_output(dest(ry_out), rayleigh_to_json(r) + "\n", out);
        } else if (*lc) {
            OneF2Params p = params_from(lc_triple, lc_a, lc_b, lc_c);
            RegionVerdict v = classify_region(p);
            std::string json = verdict_to_json(v);
            if (lc_transfer) {
                auto path = transfer_search(p, 8);
                json.pop_back();
                if (path)
                    json += fmt::format(",\"transfer\":{{\"seed\":[{},{},{}],\"family\":\"{}\",\"shift\":[{},{},{}]}}}}",
                                        num(path->seed.a), num(path->seed.b), num(path->seed.c), path->seed_family,
                                        path->m, path->n, path->l);
                else
                    json += ",\"transfer\":null}";
            }
            out << json << "\n";
        } else if (*rp) {
            double hi = std::max(3.0, 3.0 * rp_a + 1.0);
            std::array<double, 2> br{0.0, hi}, crng{0.0, hi};
            if (!rp_b.empty()) br = {rp_b[0], rp_b[1]};
            if (!rp_c.empty()) crng = {rp_c[0], rp_c[1]};
            RegionGrid g = region_grid(rp_a, br, crng, rp_res);
            if (rp_out == "-") {
                out << region_grid_svg(g);
            } else {
                write_output(rp_out + ".svg", region_grid_svg(g), out);
                write_output(rp_out + ".csv", region_grid_csv(g), out);
                out << rp_out << ".svg\n" << rp_out << ".csv\n";
            }
        } else if (*cc) {
            OneF2Params p = params_from(cc_triple, cc_a, cc_b, cc_c);
            Rect r{cc_rect[0], cc_rect[1], cc_rect[2], cc_rect[3]};
            out << (cc_quadrants ? four_quadrant_count(p, r) : complex_zero_count(p, r)) << "\n";
        }
        return 0;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hlp

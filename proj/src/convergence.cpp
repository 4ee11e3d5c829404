#include "rqi/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "rqi/rng.hpp"

namespace rqi {

double generator_residual(const ModelSpec& model, const LimitCoefficients& coeffs,
                          const CVector& alpha, const CVector& beta,
                          const CVector& u, int k, const Tolerances& tol) {
    const CVector psi = coherent_slice(model, alpha, k);
    const CVector phi = coherent_slice(model, beta, k);
    const Eigen::Index joint = model.dim_initial * model.dim_noise;
    CVector stepped;
    if (joint <= 512) {
        const CompressedStep c = build_compressed(model, k, psi, phi, tol);
        stepped = c.matrix * u;
    } else {
        stepped = compressed_apply(model, k, psi, phi, u);
    }
    const CVector lhs = std::ldexp(1.0, k) * (stepped - u);
    const Generator gen = generator(coeffs, alpha, beta);
    return (lhs - gen.matrix * u).norm();
}

std::vector<double> semigroup_power_error(
    const ModelSpec& model, const LimitCoefficients& coeffs, const CVector& alpha,
    const CVector& beta, const CVector& u, int k, const std::vector<double>& t_grid,
    const Tolerances& tol) {
    const CVector psi = coherent_slice(model, alpha, k);
    const CVector phi = coherent_slice(model, beta, k);
    const CompressedStep c = build_compressed(model, k, psi, phi, tol);
    const Generator gen = generator(coeffs, alpha, beta);
    std::vector<double> errors;
    errors.reserve(t_grid.size());
    for (double t : t_grid) {
        errors.push_back((power(c, t) * u - evolve(gen, t) * u).norm());
    }
    return errors;
}

std::vector<double> chain_power_defects(const ModelSpec& model, int k,
                                        const CVector& alpha, const CVector& beta,
                                        const CVector& u, const CVector& v,
                                        const std::vector<double>& t_grid,
                                        const Tolerances& tol) {
    return chain_power_defects(build_step(model, k, tol), model, alpha, beta, u, v,
                               t_grid, tol);
}

std::vector<double> chain_power_defects(const StepUnitary& step,
                                        const ModelSpec& model,
                                        const CVector& alpha, const CVector& beta,
                                        const CVector& u, const CVector& v,
                                        const std::vector<double>& t_grid,
                                        const Tolerances& tol) {
    const int k = step.k;
    const CVector psi = coherent_slice(model, alpha, k);
    const CVector phi = coherent_slice(model, beta, k);
    const int slices = 1 << k;
    const double inv_norm = 1.0 / (psi.norm() * phi.norm());
    // Slices beyond the last applied step contribute one overlap factor each to
    // the chain matrix element; the compressed side carries the same factor so
    // the comparison is an exact identity at every dyadic t, not only at t = 1.
    const Complex idle_factor = psi.dot(phi) * inv_norm;

    const CompressedStep comp = compress(step, psi, phi, tol);

    std::vector<long long> exponents;
    exponents.reserve(t_grid.size());
    long long max_exp = 0;
    for (double t : t_grid) {
        if (!(t >= 0.0) || t > 1.0) {
            throw std::invalid_argument("chain_power_defects: t outside [0, 1]");
        }
        const long long e = (long long)(std::floor(t * std::ldexp(1.0, k)));
        exponents.push_back(e);
        max_exp = std::max(max_exp, e);
    }

    // One chain evolution; the matrix element is read off after each step
    // against a fixed product target vector.
    ChainState state = make_chain_state(model, k, slices, u, psi, tol);
    CVector target = v;
    for (int i = 0; i < slices; ++i) {
        target = kron_vec(target, phi, tol.max_entries);
    }
    const double norm_factor = std::pow(inv_norm, slices);

    std::vector<Complex> chain_elem(std::size_t(max_exp) + 1);
    chain_elem[0] = state.vector.dot(target) * norm_factor;
    for (long long l = 1; l <= max_exp; ++l) {
        apply_adjoint_step(step.matrix, model.dim_initial, model.dim_noise, int(l),
                           state);
        chain_elem[std::size_t(l)] = state.vector.dot(target) * norm_factor;
    }

    std::vector<Complex> idle_pow(std::size_t(slices) + 1);
    idle_pow[std::size_t(slices)] = Complex(1.0, 0.0);
    for (long long l = slices - 1; l >= 0; --l) {
        idle_pow[std::size_t(l)] = idle_pow[std::size_t(l) + 1] * idle_factor;
    }

    std::vector<Complex> comp_elem(std::size_t(max_exp) + 1);
    CMatrix p = CMatrix::Identity(comp.matrix.rows(), comp.matrix.cols());
    comp_elem[0] = u.dot(p * v) * idle_pow[0];
    for (long long l = 1; l <= max_exp; ++l) {
        p = p * comp.matrix;
        comp_elem[std::size_t(l)] = u.dot(p * v) * idle_pow[std::size_t(l)];
    }

    std::vector<double> defects;
    defects.reserve(t_grid.size());
    for (long long e : exponents) {
        defects.push_back(std::abs(chain_elem[std::size_t(e)] -
                                   comp_elem[std::size_t(e)]));
    }
    return defects;
}

RateFit fit_rate(const std::vector<int>& k_grid, const std::vector<double>& errors) {
    RateFit fit;
    if (k_grid.size() != errors.size() || k_grid.size() < 3) {
        fit.note = "need at least three (k, error) points";
        return fit;
    }
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
        if (k_grid[i] <= k_grid[i - 1]) {
            fit.note = "k grid must be strictly increasing";
            return fit;
        }
    }
    for (double e : errors) {
        if (!std::isfinite(e)) {
            fit.note = "non-finite error";
            return fit;
        }
        if (e <= 1e-14) {
            fit.note = "errors at the double-precision noise floor; rate not reported";
            return fit;
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double x = double(k_grid[i]);
        const double y = std::log2(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.reliable = true;
    return fit;
}

std::vector<double> dyadic_grid(double t_max, int level) {
    const long long steps = (long long)(std::floor(t_max * std::ldexp(1.0, level)));
    std::vector<double> grid;
    grid.reserve(std::size_t(steps) + 1);
    for (long long j = 0; j <= steps; ++j) {
        grid.push_back(std::ldexp(double(j), -level));
    }
    return grid;
}

namespace {

bool decreasing_with_jitter(const std::vector<double>& values, int jitter) {
    int increases = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] < values[i - 1])) ++increases;
    }
    return increases <= jitter;
}

}  // namespace

ConvergenceReport run_harness(const ModelSpec& model,
                              const LimitCoefficients& coeffs,
                              const std::vector<CVector>& alphas,
                              const std::vector<CVector>& betas,
                              const HarnessOptions& opts,
                              const std::string& model_id) {
    if (opts.k_grid.empty()) throw std::invalid_argument("run_harness: empty k grid");

    ConvergenceReport report;
    report.model_id = model_id;
    report.seed = opts.seed;
    report.k_grid = opts.k_grid;
    report.alphas = alphas;
    report.betas = betas;
    report.model_valid = validate(model, opts.tol).pass;
    report.t_grid = dyadic_grid(opts.t_max, *std::min_element(opts.k_grid.begin(),
                                                              opts.k_grid.end()));

    std::vector<CVector> u_set = opts.u_set;
    if (u_set.empty()) {
        for (Eigen::Index i = 0; i < std::min<Eigen::Index>(model.dim_initial, 4); ++i) {
            u_set.push_back(CVector::Unit(model.dim_initial, i));
        }
        Rng rng(opts.seed);
        u_set.push_back(random_unit_vector(rng, model.dim_initial));
    }

    const auto model_at = [&](int k) {
        return opts.model_at ? opts.model_at(k) : model;
    };
    const auto u_at = [&](const CVector& u, int k) {
        return opts.project_u ? opts.project_u(u, k) : u;
    };

    const int k_ref = *std::min_element(opts.k_grid.begin(), opts.k_grid.end());

    for (int ai = 0; ai < int(alphas.size()); ++ai) {
        for (int bi = 0; bi < int(betas.size()); ++bi) {
            CellReport cell;
            cell.alpha_index = ai;
            cell.beta_index = bi;
            const Generator gen = generator(coeffs, alphas[ai], betas[bi]);

            // The limit side is resolution independent: one semigroup sweep
            // per cell covers every k.
            std::vector<CMatrix> limit_at_t;
            if (opts.with_semigroup_errors) {
                limit_at_t.reserve(report.t_grid.size());
                for (double t : report.t_grid) limit_at_t.push_back(evolve(gen, t));
            }

            for (int k : opts.k_grid) {
                const ModelSpec mk = model_at(k);
                const CVector psi = coherent_slice(mk, alphas[ai], k);
                const CVector phi = coherent_slice(mk, betas[bi], k);

                double worst_res = 0.0;
                std::vector<double> worst_err(opts.with_semigroup_errors
                                                  ? report.t_grid.size()
                                                  : 0,
                                              0.0);
                if (opts.with_semigroup_errors) {
                    const CompressedStep comp =
                        build_compressed(mk, k, psi, phi, opts.tol);
                    // Walk the dyadic grid with an incremental power: grid
                    // steps advance the exponent by 2^{k−k_ref}.
                    CMatrix stride = comp.matrix;
                    for (int s = 0; s < k - k_ref; ++s) stride = stride * stride;
                    CMatrix p = CMatrix::Identity(comp.matrix.rows(),
                                                  comp.matrix.cols());
                    for (std::size_t ti = 0; ti < report.t_grid.size(); ++ti) {
                        if (ti > 0) p = p * stride;
                        for (const CVector& u : u_set) {
                            const CVector uk = u_at(u, k);
                            worst_err[ti] = std::max(
                                worst_err[ti],
                                (p * uk - limit_at_t[ti] * uk).norm());
                        }
                    }
                    const double scale = std::ldexp(1.0, k);
                    for (const CVector& u : u_set) {
                        const CVector uk = u_at(u, k);
                        worst_res = std::max(
                            worst_res, (scale * (comp.matrix * uk - uk) -
                                        gen.matrix * uk)
                                           .norm());
                    }
                } else {
                    for (const CVector& u : u_set) {
                        worst_res = std::max(
                            worst_res,
                            generator_residual(mk, coeffs, alphas[ai], betas[bi],
                                               u_at(u, k), k, opts.tol));
                    }
                }
                cell.residuals.push_back(worst_res);
                if (opts.with_semigroup_errors) cell.errors.push_back(worst_err);
            }

            cell.monotone_pass =
                decreasing_with_jitter(cell.residuals, opts.jitter_allowance);
            cell.rate = fit_rate(opts.k_grid, cell.residuals);
            cell.rate_pass = cell.rate.reliable &&
                             cell.rate.slope >= opts.rate_window_lo &&
                             cell.rate.slope <= opts.rate_window_hi;
            bool finite = true;
            for (double r : cell.residuals) finite = finite && std::isfinite(r);
            cell.diverged = !finite || (cell.residuals.size() > 1 &&
                                        cell.residuals.back() >
                                            cell.residuals.front());
            if (opts.with_semigroup_errors) {
                const double first =
                    *std::max_element(cell.errors.front().begin(),
                                      cell.errors.front().end());
                const double last = *std::max_element(cell.errors.back().begin(),
                                                      cell.errors.back().end());
                cell.error_decrease_pass =
                    last <= 1e-14 || first >= opts.min_error_decrease * last;
            } else {
                cell.error_decrease_pass = true;
            }
            report.cells.push_back(std::move(cell));
        }
    }

    report.pass = report.model_valid;
    for (const CellReport& cell : report.cells) {
        report.pass = report.pass && cell.monotone_pass && cell.rate_pass &&
                      cell.error_decrease_pass && !cell.diverged;
    }
    return report;
}

}  // namespace rqi

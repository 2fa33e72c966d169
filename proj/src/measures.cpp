#include "eraserlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace eraserlab {

namespace {

constexpr double kPi = std::numbers::pi;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of a 2x2 density matrix given its entries (not necessarily
// normalized; `tr` is its trace).
double entropy_2x2(double r00, double r11, cdouble r01, double tr) {
    if (tr <= 0.0) return 0.0;
    const double p00 = r00 / tr, p11 = r11 / tr;
    const double det = p00 * p11 - std::norm(r01 / tr);
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det));
    return binary_entropy(std::clamp(0.5 * (1.0 + disc), 0.0, 1.0));
}

// Amplitudes of a pure state arranged as M[ab][t], with the AB index laid
// out as (A qubits, then B qubits) big-endian.
struct TaggedState {
    std::size_t a_count = 0, b_count = 0, t_count = 0;
    CMatrix m;  // 2^(a+b) x 2^t
};

TaggedState arrange(const StateVector& s, const PartitionSpec& cut) {
    cut.validate();
    if (cut.n_qubits() != s.n_qubits())
        throw std::invalid_argument("measures: partition does not match register size");
    if (cut.a_qubits.size() != 1)
        throw std::invalid_argument("measures: A side must be a single qubit");
    if (cut.b_qubits.empty() || cut.b_qubits.size() > 2)
        throw std::invalid_argument("measures: B side must be 1 or 2 qubits");
    TaggedState ts;
    ts.a_count = cut.a_qubits.size();
    ts.b_count = cut.b_qubits.size();
    ts.t_count = cut.t_qubits.size();
    const std::size_t ab_dim = std::size_t{1} << (ts.a_count + ts.b_count);
    const std::size_t t_dim = std::size_t{1} << ts.t_count;
    ts.m = CMatrix(ab_dim, t_dim);
    const std::size_t n = s.n_qubits();
    for (std::size_t k = 0; k < s.dim(); ++k) {
        std::size_t ab = 0, t = 0;
        for (std::size_t q : cut.a_qubits) ab = (ab << 1) | std::size_t(qubit_bit(k, q, n));
        for (std::size_t q : cut.b_qubits) ab = (ab << 1) | std::size_t(qubit_bit(k, q, n));
        for (std::size_t q : cut.t_qubits) t = (t << 1) | std::size_t(qubit_bit(k, q, n));
        ts.m(ab, t) = s.amplitude(k);
    }
    return ts;
}

// sum_i p_i' E(psi_i') for the taggant basis whose rows are |i'> components.
double ep_value(const TaggedState& ts, const CMatrix& u) {
    const std::size_t ab_dim = ts.m.rows();
    const std::size_t t_dim = ts.m.cols();
    const std::size_t b_dim = ab_dim >> 1;  // A is one qubit
    double total = 0.0;
    std::vector<cdouble> comp(ab_dim);
    for (std::size_t i = 0; i < t_dim; ++i) {
        double p = 0.0;
        for (std::size_t ab = 0; ab < ab_dim; ++ab) {
            cdouble sum = 0.0;
            for (std::size_t t = 0; t < t_dim; ++t) sum += std::conj(u(i, t)) * ts.m(ab, t);
            comp[ab] = sum;
            p += std::norm(sum);
        }
        if (p < 1e-14) continue;
        double r00 = 0.0, r11 = 0.0;
        cdouble r01 = 0.0;
        for (std::size_t b = 0; b < b_dim; ++b) {
            r00 += std::norm(comp[b]);
            r11 += std::norm(comp[b_dim + b]);
            r01 += comp[b] * std::conj(comp[b_dim + b]);
        }
        total += p * entropy_2x2(r00, r11, r01, p);
    }
    return total;
}

// Nelder-Mead simplex minimization; stops when the simplex diameter drops
// below `tol` or after `max_iter` iterations.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<std::vector<double>> simplex, double tol, int max_iter) {
    const std::size_t dim = simplex[0].size();
    std::vector<double> fv(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = f(simplex[i]);

    auto diameter = [&]() {
        double d = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            for (std::size_t k = 0; k < dim; ++k)
                d = std::max(d, std::abs(simplex[i][k] - simplex[0][k]));
        return d;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(simplex.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> sx(simplex.size());
        std::vector<double> sf(simplex.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            sx[i] = simplex[order[i]];
            sf[i] = fv[order[i]];
        }
        simplex = std::move(sx);
        fv = std::move(sf);
        if (diameter() < tol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
        for (double& c : centroid) c /= double(simplex.size() - 1);

        auto blend = [&](const std::vector<double>& x, double w) {
            std::vector<double> out(dim);
            for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + w * (x[k] - centroid[k]);
            return out;
        };

        const std::vector<double>& worst = simplex.back();
        std::vector<double> xr = blend(worst, -1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            std::vector<double> xe = blend(worst, -2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex.back() = std::move(xe);
                fv.back() = fe;
            } else {
                simplex.back() = std::move(xr);
                fv.back() = fr;
            }
        } else if (fr < fv[fv.size() - 2]) {
            simplex.back() = std::move(xr);
            fv.back() = fr;
        } else {
            std::vector<double> xc = blend(worst, fr < fv.back() ? -0.5 : 0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fv.back())) {
                simplex.back() = std::move(xc);
                fv.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t k = 0; k < dim; ++k)
                        simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
        if (fv[i] < fv[best]) best = i;
    return {simplex[best], fv[best]};
}

std::string describe(const BasisParams& p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "theta=%.9g phi=%.9g", p.theta, p.phi);
    return buf;
}

// Extremize E_p over the d_T=2 basis manifold: 64x64 grid, then simplex
// refinement seeded with the best 3 grid points.
EntanglementReport extremize_dt2(const TaggedState& ts, bool maximize) {
    auto objective = [&](const std::vector<double>& x) {
        const double v = ep_value(ts, taggant_basis({x[0], x[1]}).u);
        return maximize ? -v : v;
    };

    const int ng = 64;
    std::vector<std::pair<double, std::vector<double>>> grid;
    grid.reserve(ng * ng);
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) {
            std::vector<double> x = {0.5 * kPi * i / (ng - 1), 2.0 * kPi * j / ng};
            grid.emplace_back(objective(x), std::move(x));
        }
    std::stable_sort(grid.begin(), grid.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::vector<double>> simplex = {grid[0].second, grid[1].second, grid[2].second};
    // Degenerate (collinear) starting points stall the simplex; nudge.
    const double cross = (simplex[1][0] - simplex[0][0]) * (simplex[2][1] - simplex[0][1]) -
                         (simplex[1][1] - simplex[0][1]) * (simplex[2][0] - simplex[0][0]);
    if (std::abs(cross) < 1e-12) {
        simplex[1][0] += 0.02;
        simplex[2][1] += 0.02;
    }
    auto [best_x, best_f] = nelder_mead(objective, simplex, 1e-8, 400);
    if (grid[0].first < best_f) {
        best_x = grid[0].second;
        best_f = grid[0].first;
    }
    BasisParams params{best_x[0], best_x[1]};
    const double value = maximize ? -best_f : best_f;
    return {std::clamp(value, 0.0, 1.0), describe(params), params};
}

// Best-effort extremization over the d_T=4 basis manifold (12 Givens
// parameters): seeded random sampling, then simplex refinement.
EntanglementReport extremize_dt4(const TaggedState& ts, bool maximize) {
    auto objective = [&](const std::vector<double>& x) {
        const double v = ep_value(ts, givens_basis(x).u);
        return maximize ? -v : v;
    };

    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> utheta(0.0, 0.5 * kPi);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    std::vector<double> best(12, 0.0);
    double best_f = objective(best);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<double> x(12);
        for (int k = 0; k < 12; ++k) x[k] = (k % 2 == 0) ? utheta(rng) : uphi(rng);
        const double v = objective(x);
        if (v < best_f) {
            best_f = v;
            best = std::move(x);
        }
    }
    std::vector<std::vector<double>> simplex = {best};
    for (int k = 0; k < 12; ++k) {
        std::vector<double> x = best;
        x[k] += 0.1;
        simplex.push_back(std::move(x));
    }
    auto [bx, bf] = nelder_mead(objective, simplex, 1e-8, 2000);
    if (best_f < bf) bf = best_f;
    const double value = maximize ? -bf : bf;
    return {std::clamp(value, 0.0, 1.0), "givens basis (best effort)", std::nullopt};
}

EntanglementReport extremize(const StateVector& s, const PartitionSpec& cut, bool maximize) {
    if (cut.t_qubits.empty())
        throw std::invalid_argument("measures: T is empty; use entanglement_pure");
    const TaggedState ts = arrange(s, cut);
    if (ts.t_count == 1) return extremize_dt2(ts, maximize);
    if (ts.t_count == 2) return extremize_dt4(ts, maximize);
    throw std::invalid_argument("measures: taggant must be 1 or 2 qubits");
}

}  // namespace

double binary_entropy(double x) {
    if (x < -1e-10 || x > 1.0 + 1e-10)
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    return -(xlog2x(x) + xlog2x(1.0 - x));
}

EntanglementReport entanglement_pure(const StateVector& s, const PartitionSpec& cut) {
    if (!cut.t_qubits.empty())
        throw std::invalid_argument("entanglement_pure: T part of the cut must be empty");
    const TaggedState ts = arrange(s, cut);
    const double v = ep_value(ts, CMatrix::identity(1));
    return {std::clamp(v, 0.0, 1.0), ""};
}

EntanglementReport entanglement_of_projection(const StateVector& s, const PartitionSpec& cut,
                                              const TaggantBasis& basis) {
    const TaggedState ts = arrange(s, cut);
    if (basis.dim() != (std::size_t{1} << ts.t_count))
        throw std::invalid_argument("entanglement_of_projection: basis dimension mismatch");
    if (!basis.u.is_unitary(1e-9))
        throw std::invalid_argument("entanglement_of_projection: basis is not unitary");
    const double v = ep_value(ts, basis.u);
    return {std::clamp(v, 0.0, 1.0), "projection basis"};
}

double ep_closed_form(double alpha2, double a2) {
    if (alpha2 < -1e-10 || alpha2 > 1.0 + 1e-10 || a2 < -1e-10 || a2 > 1.0 + 1e-10)
        throw std::domain_error("ep_closed_form: arguments outside [0,1]");
    alpha2 = std::clamp(alpha2, 0.0, 1.0);
    a2 = std::clamp(a2, 0.0, 1.0);
    const double p0 = a2 * alpha2 + (1.0 - a2) * (1.0 - alpha2);
    return binary_entropy(alpha2) + binary_entropy(a2) - binary_entropy(p0);
}

EntanglementReport entanglement_of_formation(const StateVector& s, const PartitionSpec& cut) {
    return extremize(s, cut, false);
}

EntanglementReport entanglement_of_assistance(const StateVector& s, const PartitionSpec& cut) {
    return extremize(s, cut, true);
}

EntanglementReport entanglement_pf(const StateVector& s, const PartitionSpec& cut,
                                   const std::optional<MeasurementSpec>& projectors) {
    if (!projectors) {
        // h = 1: no measurement, E_pf = E_f.
        EntanglementReport r = entanglement_of_formation(s, cut);
        r.basis_or_projectors = "no measurement";
        return r;
    }
    cut.validate();
    std::vector<int> in_t(s.n_qubits(), 0);
    for (std::size_t q : cut.t_qubits) in_t[q] = 1;
    for (std::size_t q : projectors->targets)
        if (q >= s.n_qubits() || !in_t[q])
            throw std::invalid_argument("entanglement_pf: measurement target not in T");

    const bool full_t = projectors->targets.size() == cut.t_qubits.size();
    const MeasurementResult mr = measure(s, *projectors);
    double total = 0.0;
    for (const MeasurementOutcome& out : mr.outcomes) {
        if (out.probability < 1e-14 || !out.post_state) continue;
        if (full_t) {
            // rho_j pure in AB; its E_f is the pure-state entanglement.
            PartitionSpec ab_cut{cut.a_qubits, cut.b_qubits, {}};
            // Collapsed taggant factors out; trace it away first.
            std::vector<std::size_t> keep = cut.a_qubits;
            keep.insert(keep.end(), cut.b_qubits.begin(), cut.b_qubits.end());
            DensityMatrix red = partial_trace(density_matrix(*out.post_state), keep, s.n_qubits());
            // Entropy of the single-qubit A block of the pure AB state.
            const std::size_t b_dim = red.dim() >> 1;
            double r00 = 0.0, r11 = 0.0;
            cdouble r01 = 0.0;
            for (std::size_t b = 0; b < b_dim; ++b) {
                r00 += red(b, b).real();
                r11 += red(b_dim + b, b_dim + b).real();
                r01 += red(b, b_dim + b);
            }
            total += out.probability * entropy_2x2(r00, r11, r01, 1.0);
        } else {
            total += out.probability * entanglement_of_formation(*out.post_state, cut).value;
        }
    }
    return {std::clamp(total, 0.0, 1.0), "projective measurement on T"};
}

double concurrence_ef_oracle(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("concurrence_ef_oracle: two-qubit density matrix required");

    EigenSystem sys = eigensolve_hermitian(rho);
    CMatrix sqrt_rho(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            cdouble sum = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                sum += sys.eigenvectors(r, k) * std::sqrt(std::max(0.0, sys.eigenvalues[k])) *
                       std::conj(sys.eigenvectors(c, k));
            sqrt_rho(r, c) = sum;
        }

    // rho_tilde = (sigma_y x sigma_y) rho* (sigma_y x sigma_y); the flip
    // matrix is the antidiagonal (-1, 1, 1, -1).
    const double flip[4] = {-1.0, 1.0, 1.0, -1.0};
    CMatrix tilde(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            tilde(r, c) = flip[r] * flip[c] * std::conj(rho(3 - r, 3 - c));

    CMatrix m = sqrt_rho * tilde * sqrt_rho;
    CMatrix herm(4, 4);  // symmetrize away roundoff
    const CMatrix madj = m.adjoint();
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) herm(r, c) = 0.5 * (m(r, c) + madj(r, c));

    EigenSystem msys = hermitian_eigensystem(herm);
    std::vector<double> lam;
    for (double e : msys.eigenvalues) lam.push_back(std::sqrt(std::max(0.0, e)));
    std::sort(lam.rbegin(), lam.rend());
    const double c = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

TaggantBasis givens_basis(const std::vector<double>& params) {
    if (params.size() != 12)
        throw std::invalid_argument("givens_basis: 12 parameters required");
    static const std::pair<std::size_t, std::size_t> planes[6] = {
        {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CMatrix u = CMatrix::identity(4);
    for (int k = 0; k < 6; ++k) {
        const auto [p, q] = planes[k];
        const double theta = params[2 * k];
        const double phi = params[2 * k + 1];
        CMatrix g = CMatrix::identity(4);
        g(p, p) = std::cos(theta);
        g(p, q) = std::polar(std::sin(theta), phi);
        g(q, p) = -std::polar(std::sin(theta), -phi);
        g(q, q) = std::cos(theta);
        u = u * g;
    }
    return TaggantBasis{std::move(u)};
}

}  // namespace eraserlab

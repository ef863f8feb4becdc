#include "spinpoint/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "spinpoint/nonnormal.hpp"
#include "spinpoint/polynomial.hpp"

namespace spinpoint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Identically-zero test: every sample below this fraction of its Hadamard bound.
constexpr double kZeroDiscriminant = 1e-10;
// Discriminant coefficients below this fraction of the largest are dropped.
constexpr double kTrimRelative = 1e-8;
// Relative accuracy assumed for the recovered discriminant coefficients; a
// k-fold root splits into a ring of radius about kCoeffAccuracy^(1/k).
constexpr double kCoeffAccuracy = 1e-12;
constexpr double kDedupe = 1e-8;
constexpr double kResidualAccept = 1e-6;
constexpr int kNewtonIterations = 60;
constexpr int kMaxHalvings = 8;

struct DiscSample {
    Complex value;
    double hadamard;
};

// det(A + zB - E I) as a monic polynomial in E (leading coefficient (-1)^n removed).
CVector monic_char_poly(const CMatrix& h) {
    CVector c = char_poly(h);
    if (h.rows() % 2 == 1)
        for (auto& x : c) x = -x;
    return c;
}

DiscSample sample_discriminant(const PencilFamily& p, Complex z) {
    const CVector c = monic_char_poly(p.at(z));
    const CVector dc = poly::derivative(c);
    const CMatrix syl = poly::sylvester(c, dc);
    double hadamard = 1.0;
    for (std::size_t r = 0; r < syl.rows(); ++r) {
        double row = 0.0;
        for (std::size_t k = 0; k < syl.cols(); ++k) row = std::hypot(row, std::abs(syl(r, k)));
        hadamard *= row;
    }
    return {determinant(syl), hadamard};
}

// Coefficients of det(H - E I) and their z-derivatives, both ascending in E,
// from the Faddeev-LeVerrier recursion and its derivative in z.
struct CharPolyJet {
    CVector value;
    CVector dz;
};

CharPolyJet char_poly_jet(const PencilFamily& p, Complex z) {
    const CMatrix h = p.at(z);
    const CMatrix& b = p.b();
    const std::size_t n = h.rows();
    CVector c(n + 1), dc(n + 1);
    c[n] = 1.0;
    CMatrix m(n, n), dm(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        CMatrix next = mul(h, m);
        CMatrix dnext = add(mul(b, m), mul(h, dm));
        for (std::size_t i = 0; i < n; ++i) {
            next(i, i) += c[n - k + 1];
            dnext(i, i) += dc[n - k + 1];
        }
        m = std::move(next);
        dm = std::move(dnext);
        const auto kd = static_cast<double>(k);
        c[n - k] = -mul(h, m).trace() / kd;
        dc[n - k] = -(mul(b, m).trace() + mul(h, dm).trace()) / kd;
    }
    if (n % 2 == 1) {
        for (auto& x : c) x = -x;
        for (auto& x : dc) x = -x;
    }
    return {c, dc};
}

CharPolyJet char_poly_jet_fd(const PencilFamily& p, Complex z) {
    const double h = 1e-7 * (1.0 + std::abs(z));
    const CVector c = char_poly(p.at(z));
    const CVector up = char_poly(p.at(z + h));
    const CVector down = char_poly(p.at(z - h));
    CVector dc(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) dc[k] = (up[k] - down[k]) / (2.0 * h);
    return {c, dc};
}

struct NewtonResult {
    Complex e;
    Complex z;
    bool converged = false;
};

// Newton on p(E, z) = 0, dp/dE(E, z) = 0.
template <typename Jet>
NewtonResult newton_ep(const PencilFamily& p, Complex e, Complex z, Jet jet) {
    for (int it = 0; it < kNewtonIterations; ++it) {
        const CharPolyJet j = jet(p, z);
        const CVector pe = poly::derivative(j.value);
        const CVector pee = poly::derivative(pe);
        const CVector pze = poly::derivative(j.dz);
        const Complex f1 = poly::evaluate(j.value, e);
        const Complex f2 = poly::evaluate(pe, e);
        const Complex j00 = poly::evaluate(pe, e), j01 = poly::evaluate(j.dz, e);
        const Complex j10 = poly::evaluate(pee, e), j11 = poly::evaluate(pze, e);
        const Complex det = j00 * j11 - j01 * j10;
        if (det == Complex{} || !std::isfinite(std::abs(det))) return {e, z, false};
        const Complex de = (f1 * j11 - f2 * j01) / det;
        const Complex dz = (j00 * f2 - j10 * f1) / det;
        e -= de;
        z -= dz;
        if (!std::isfinite(std::abs(e)) || !std::isfinite(std::abs(z))) return {e, z, false};
        if (std::abs(de) + std::abs(dz) <= 1e-14 * (1.0 + std::abs(e) + std::abs(z))) return {e, z, true};
    }
    return {e, z, false};
}

struct Cluster {
    Complex center;
    std::size_t size;
    double radius;
};

// Groups discriminant roots that are the split images of one multiple root:
// a group of k roots is accepted when its radius is within
// kCoeffAccuracy^(1/k) * (1 + |center|).
std::vector<Cluster> cluster_roots(CVector roots) {
    std::vector<Cluster> out;
    while (!roots.empty()) {
        const Complex seed = roots.front();
        std::vector<std::size_t> order(roots.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return std::abs(roots[x] - seed) < std::abs(roots[y] - seed);
        });

        Cluster best{seed, 1, 0.0};
        Complex sum{};
        for (std::size_t k = 1; k <= roots.size(); ++k) {
            sum += roots[order[k - 1]];
            const Complex center = sum / static_cast<double>(k);
            double radius = 0.0;
            for (std::size_t i = 0; i < k; ++i) radius = std::max(radius, std::abs(roots[order[i]] - center));
            const double allowed = std::pow(kCoeffAccuracy, 1.0 / static_cast<double>(k)) * (1.0 + std::abs(center));
            if (radius <= allowed) best = {center, k, radius};
        }
        out.push_back(best);

        std::vector<bool> used(roots.size(), false);
        for (std::size_t i = 0; i < best.size; ++i) used[order[i]] = true;
        CVector rest;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (!used[i]) rest.push_back(roots[i]);
        roots = std::move(rest);
    }
    return out;
}

// Mean of the eigenvalues that coalesce around the closest pair.
Complex degenerate_value(const CVector& values, double threshold) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (std::abs(values[i] - values[j]) < best) {
                best = std::abs(values[i] - values[j]);
                bi = i;
                bj = j;
            }
    const Complex mid = 0.5 * (values[bi] + values[bj]);
    const double reach = std::max(threshold, 2.0 * best);
    Complex sum{};
    std::size_t count = 0;
    for (const auto& v : values)
        if (std::abs(v - mid) <= reach) {
            sum += v;
            ++count;
        }
    return sum / static_cast<double>(count);
}

double min_pairwise_gap(const CVector& values) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) gap = std::min(gap, std::abs(values[i] - values[j]));
    return gap;
}

}  // namespace

PencilFamily::PencilFamily(CMatrix a, CMatrix b) : a_(std::move(a)), b_(std::move(b)) {
    if (!a_.is_square() || a_.empty()) throw DimensionError("pencil: A must be square");
    if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) throw DimensionError("pencil: A and B sizes differ");
    if (frobenius_norm(b_) == 0.0) throw InvalidArgument("invalid-pencil", "pencil: B must be nonzero");
}

CMatrix PencilFamily::at(Complex z) const { return add(a_, scale(z, b_)); }

Complex discriminant_at(const PencilFamily& p, Complex z) { return sample_discriminant(p, z).value; }

Discriminant discriminant_poly(const PencilFamily& p, std::size_t samples) {
    const std::size_t n = p.dimension();
    if (n < 2) throw DimensionError("discriminant_poly: dimension must be at least 2");
    const std::size_t degree = n * (n - 1);
    if (samples == 0) samples = degree + 1;
    if (samples < degree + 1) {
        throw InvalidArgument("invalid-samples", "discriminant_poly: need at least n(n-1)+1 samples");
    }

    Discriminant d;
    d.samples = samples;
    d.sample_radius = 1.0 + frobenius_norm(p.a()) / frobenius_norm(p.b());
    const double r = d.sample_radius;

    CVector values(samples);
    bool all_negligible = true;
    for (std::size_t j = 0; j < samples; ++j) {
        const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
        const DiscSample s = sample_discriminant(p, std::polar(r, angle));
        values[j] = s.value;
        d.max_sample = std::max(d.max_sample, std::abs(s.value));
        if (std::abs(s.value) > kZeroDiscriminant * s.hadamard) all_negligible = false;
    }
    if (all_negligible) throw ZeroDiscriminantError();

    // Inverse DFT on the circle: d_k = (1/N) sum_j D(z_j) w^{-jk} / r^k.
    CVector coeffs(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < samples; ++j) {
            const double angle = -kTwoPi * static_cast<double>((j * k) % samples) / static_cast<double>(samples);
            acc += values[j] * std::polar(1.0, angle);
        }
        coeffs[k] = acc / static_cast<double>(samples) / std::pow(r, static_cast<double>(k));
    }
    d.coeffs = poly::trim(coeffs, kTrimRelative);
    return d;
}

double eigen_gap(const CMatrix& h) { return min_pairwise_gap(eigenvalues(h)); }

double gap_threshold(const PencilFamily& p, Complex z) {
    const double scale = 1.0 + frobenius_norm(p.a()) + std::abs(z) * frobenius_norm(p.b());
    return 2.0 * std::max(1e-6, defective_spread(p.dimension())) * scale;
}

std::vector<EPCandidate> find_exceptional_points(const PencilFamily& p) {
    const Discriminant disc = discriminant_poly(p);
    const std::size_t n = p.dimension();

    std::vector<EPCandidate> accepted;
    for (const Cluster& cluster : cluster_roots(poly::roots(disc.coeffs))) {
        const Complex z0 = cluster.center;
        const CVector start_values = eigenvalues(p.at(z0));
        const Complex e0 = degenerate_value(start_values, 0.0);

        NewtonResult nr = newton_ep(p, e0, z0, char_poly_jet);
        if (!nr.converged) nr = newton_ep(p, e0, z0, char_poly_jet_fd);
        const double drift_allowed = std::max(2.0 * cluster.radius, 1e-6 * (1.0 + std::abs(z0)));
        const bool use_newton = nr.converged && std::abs(nr.z - z0) <= drift_allowed;

        EPCandidate c;
        c.z = use_newton ? nr.z : z0;
        c.newton_converged = use_newton;
        c.multiplicity = cluster.size;

        const CMatrix h = p.at(c.z);
        const CVector values = eigenvalues(h);
        const double threshold = gap_threshold(p, c.z);
        c.gap = min_pairwise_gap(values);
        c.degenerate_eigenvalue = use_newton ? nr.e : degenerate_value(values, threshold);
        c.discriminant_residual =
            disc.max_sample > 0 ? std::abs(discriminant_at(p, c.z)) / disc.max_sample : 0.0;
        if (c.gap > threshold || c.discriminant_residual > kResidualAccept) continue;

        const CMatrix shifted = sub(h, scale(c.degenerate_eigenvalue, CMatrix::identity(n)));
        const double scale_h = 1.0 + frobenius_norm(h);
        c.geometric_multiplicity = n - rank(shifted, Tolerance{1e-8 * scale_h, 1e-8});
        c.defective = c.geometric_multiplicity == 1;

        const bool duplicate = std::any_of(accepted.begin(), accepted.end(), [&](const EPCandidate& o) {
            return std::abs(o.z - c.z) <= kDedupe * (1.0 + std::abs(c.z));
        });
        if (!duplicate) accepted.push_back(c);
    }

    std::sort(accepted.begin(), accepted.end(), [](const EPCandidate& x, const EPCandidate& y) {
        const double ax = std::abs(x.z), ay = std::abs(y.z);
        if (std::abs(ax - ay) > kDedupe * (1.0 + ax)) return ax < ay;
        return std::arg(x.z) < std::arg(y.z);
    });
    return accepted;
}

std::vector<std::size_t> hungarian_assignment(const std::vector<std::vector<double>>& cost) {
    // Shortest augmenting path with potentials; rows/cols are 1-based inside.
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[col0] = true;
            const std::size_t r0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= n; ++col) {
                if (used[col]) continue;
                const double cur = cost[r0 - 1][col - 1] - u[r0] - v[col];
                if (cur < minv[col]) {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if (minv[col] < delta) {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= n; ++col) {
                if (used[col]) {
                    u[match[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t col = 1; col <= n; ++col) assignment[match[col] - 1] = col - 1;
    return assignment;
}

namespace {

// Assigns each previous value to a new one. Greedy closest-pair first; falls
// back to the optimal assignment when greedy costs more than twice the
// row-minimum lower bound.
std::vector<std::size_t> match_values(const CVector& prev, const CVector& next) {
    const std::size_t n = prev.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    double lower = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row_min = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            cost[i][j] = std::abs(prev[i] - next[j]);
            row_min = std::min(row_min, cost[i][j]);
        }
        lower += row_min;
    }

    std::vector<std::size_t> assign(n, n);
    std::vector<bool> taken(n, false);
    double greedy = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (assign[i] != n) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!taken[j] && cost[i][j] < best) {
                    best = cost[i][j];
                    bi = i;
                    bj = j;
                }
        }
        assign[bi] = bj;
        taken[bj] = true;
        greedy += best;
    }
    if (greedy > 2.0 * lower) return hungarian_assignment(cost);
    return assign;
}

}  // namespace

MonodromyResult trace_sheets(const PencilFamily& p, const PathSpec& path, std::span<const EPCandidate> known_eps) {
    if (!(path.radius > 0.0) || !std::isfinite(path.radius)) {
        throw InvalidArgument("invalid-path", "trace_sheets: radius must be positive");
    }
    if (path.steps < 16) throw InvalidArgument("invalid-path", "trace_sheets: at least 16 steps per turn");
    if (path.turns == 0) throw InvalidArgument("invalid-path", "trace_sheets: turns must be nonzero");
    for (const auto& ep : known_eps) {
        if (std::abs(std::abs(ep.z - path.center) - path.radius) < 1e-3 * path.radius) {
            throw InvalidArgument("path-near-ep", "trace_sheets: loop passes too close to an exceptional point");
        }
    }

    const std::size_t total = path.steps * static_cast<std::size_t>(std::abs(path.turns));
    const double sweep = kTwoPi * static_cast<double>(path.turns);
    auto z_at = [&](double t) {
        if (t == 0.0 || t == 1.0) return path.center + path.radius;
        return path.center + std::polar(path.radius, sweep * t);
    };

    MonodromyResult out;
    CVector current = eigenvalues(p.at(z_at(0.0)));
    const CVector initial = current;
    out.t.push_back(0.0);
    out.z.push_back(z_at(0.0));
    out.trajectories.push_back(current);

    for (std::size_t step = 1; step <= total; ++step) {
        const double t_end = static_cast<double>(step) / static_cast<double>(total);
        double t = static_cast<double>(step - 1) / static_cast<double>(total);
        double h = t_end - t;
        int depth = 0;
        while (t < t_end) {
            const double t_next = std::min(t + h, t_end);
            const CVector next = eigenvalues(p.at(z_at(t_next)));
            const auto assign = match_values(current, next);
            double jump = 0.0;
            for (std::size_t i = 0; i < current.size(); ++i) jump = std::max(jump, std::abs(current[i] - next[assign[i]]));
            if (current.size() > 1 && jump > 0.5 * min_pairwise_gap(current)) {
                if (depth == kMaxHalvings) {
                    throw PathError(step, "trace_sheets: step " + std::to_string(step) +
                                              " unresolved after halving; loop too close to an exceptional point");
                }
                h *= 0.5;
                ++depth;
                continue;
            }
            for (std::size_t i = 0; i < current.size(); ++i) current[i] = next[assign[i]];
            t = t_next;
        }
        out.t.push_back(t_end);
        out.z.push_back(z_at(t_end));
        out.trajectories.push_back(current);
    }

    const std::size_t n = current.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(current[i] - initial[j]);
    out.permutation = hungarian_assignment(cost);
    for (std::size_t i = 0; i < n; ++i) out.closure_error = std::max(out.closure_error, cost[i][out.permutation[i]]);
    return out;
}

}  // namespace spinpoint

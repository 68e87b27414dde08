#include "thirring/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "thirring/errors.hpp"

namespace thirring {

namespace {

constexpr Complex kI{0.0, 1.0};

double norm2(const Complex& z) { return std::norm(z); }

double max_data_modulus_sq(const DataSpec& spec) {
    const double c = std::max({std::norm(spec.kappa_plus), std::norm(spec.kappa_minus),
                               std::norm(spec.lambda_plus), std::norm(spec.lambda_minus)});
    return c / spec.epsilon;
}

// Samples along the two sides of the backward cone of node (j, n): the right
// side P_k = (j + n − k, k) and the left side Q_k = (j − n + k, k).
struct ConeSides {
    std::vector<Complex> u_right;
    std::vector<Complex> v_left;
};

ConeSides cone_sides(const CharacteristicMesh& mesh, int j, int n) {
    if (j - n < 0 || j + n > mesh.node_count() - 1) {
        throw DomainError("backward cone leaves the mesh domain");
    }
    ConeSides sides;
    sides.u_right.reserve(static_cast<std::size_t>(n) + 1);
    sides.v_left.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        sides.u_right.push_back(mesh.u(j + n - k, k));
        sides.v_left.push_back(mesh.v(j - n + k, k));
    }
    return sides;
}

// Cumulative trapezoid of 2|w|² with step Δ; entry k holds ∫₀^{kΔ}.
std::vector<double> cumulative_phase(const std::vector<Complex>& w, double delta) {
    std::vector<double> phi(w.size(), 0.0);
    for (std::size_t k = 1; k < w.size(); ++k) {
        phi[k] = phi[k - 1] + delta * (norm2(w[k - 1]) + norm2(w[k]));
    }
    return phi;
}

// Trapezoid of e^{−iφ_k} w_k.
Complex damped_integral(const std::vector<Complex>& w, const std::vector<double>& phi, double delta) {
    Complex sum{};
    const std::size_t last = w.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const double weight = (k == 0 || k == last) ? 0.5 : 1.0;
        sum += weight * std::polar(1.0, -phi[k]) * w[k];
    }
    return delta * sum;
}

void put_u64(std::ostream& out, std::uint64_t value) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
    }
    out.write(bytes, 8);
}

void put_f64(std::ostream& out, double value) { put_u64(out, std::bit_cast<std::uint64_t>(value)); }

std::uint64_t get_u64(std::istream& in) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
        throw ConfigError("mesh dump truncated");
    }
    std::uint64_t value = 0;
    for (int i = 7; i >= 0; --i) {
        value = (value << 8) | bytes[i];
    }
    return value;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

constexpr char kMagic[8] = {'T', 'H', 'R', 'M', 'E', 'S', 'H', '1'};

}  // namespace

MeshParams MeshParams::covering_cutoff(double delta, double t_max, double margin) {
    MeshParams p;
    p.delta = delta;
    p.t_max = t_max;
    p.x_min = -(1.0 + t_max + margin);
    p.x_max = 1.0 + t_max + margin;
    return p;
}

MeshParams MeshParams::local(double delta, double t_max, double half_width) {
    MeshParams p;
    p.delta = delta;
    p.t_max = t_max;
    p.x_min = -half_width;
    p.x_max = half_width;
    return p;
}

CharacteristicMesh::CharacteristicMesh(double delta, std::int64_t origin, int node_count, int level_count,
                                       bool exterior_exact)
    : delta_(delta),
      origin_(origin),
      node_count_(node_count),
      level_count_(level_count),
      exterior_exact_(exterior_exact) {
    if (!(delta > 0.0) || node_count < 2 || level_count < 1) {
        throw DomainError("mesh needs delta > 0, at least two nodes and one level");
    }
    const auto size = static_cast<std::size_t>(node_count) * static_cast<std::size_t>(level_count);
    u_.assign(size, Complex{});
    v_.assign(size, Complex{});
}

int CharacteristicMesh::node_index(double xv) const {
    const double r = xv / delta_;
    const auto k = static_cast<std::int64_t>(std::llround(r));
    if (std::abs(r - static_cast<double>(k)) > 1e-6) {
        throw DomainError("x is not a mesh node");
    }
    const std::int64_t j = k + origin_;
    if (j < 0 || j >= node_count_) {
        throw DomainError("x outside the mesh domain");
    }
    return static_cast<int>(j);
}

int CharacteristicMesh::level_index(double tv) const {
    const double r = tv / delta_;
    const auto n = static_cast<std::int64_t>(std::llround(r));
    if (std::abs(r - static_cast<double>(n)) > 1e-6) {
        throw DomainError("t is not a mesh level");
    }
    if (n < 0 || n >= level_count_) {
        throw DomainError("t outside the mesh levels");
    }
    return static_cast<int>(n);
}

bool CharacteristicMesh::valid(int j, int n) const {
    if (j < 0 || j >= node_count_ || n < 0 || n >= level_count_) {
        return false;
    }
    if (exterior_exact_) {
        return true;
    }
    return j - n >= 0 && j + n <= node_count_ - 1;
}

CharacteristicMesh solve(const DataSpec& spec, const MeshParams& params, SolveStats* stats) {
    spec.validate();
    if (!(spec.epsilon > 0.0)) {
        throw DomainError("solver needs epsilon > 0");
    }
    const double delta = params.delta;
    if (!(delta > 0.0) || delta > spec.epsilon / 10.0 * (1.0 + 1e-12)) {
        throw DomainError("mesh step must satisfy 0 < delta <= epsilon/10");
    }
    if (delta * (2.0 * max_data_modulus_sq(spec) + spec.mass) >= 1.0) {
        throw DomainError("mesh step too large for the data amplitude");
    }
    if (!(params.t_max > 0.0) || !(params.x_max > params.x_min)) {
        throw DomainError("mesh needs t_max > 0 and x_max > x_min");
    }
    const auto origin = static_cast<std::int64_t>(std::ceil(-params.x_min / delta - 1e-9));
    const auto right = static_cast<std::int64_t>(std::ceil(params.x_max / delta - 1e-9));
    const std::int64_t nodes = origin + right + 1;
    const auto steps = static_cast<std::int64_t>(std::ceil(params.t_max / delta - 1e-9));
    if (nodes < 2 || static_cast<double>(nodes) * static_cast<double>(steps + 1) * 32.0 > 6e9) {
        throw ConfigError("mesh too large");
    }
    const double x_lo = -static_cast<double>(origin) * delta;
    const double x_hi = static_cast<double>(right) * delta;
    const double t_hi = static_cast<double>(steps) * delta;
    const bool exterior = spec.cutoff && x_lo <= -1.0 - t_hi && x_hi >= 1.0 + t_hi;

    CharacteristicMesh mesh(delta, origin, static_cast<int>(nodes), static_cast<int>(steps + 1), exterior);
    const int count = mesh.node_count();
    for (int j = 0; j < count; ++j) {
        const SpinorSample s = data_sample(spec, mesh.x(j));
        mesh.u_mut(j, 0) = s.u;
        mesh.v_mut(j, 0) = s.v;
    }

    const double mu = 0.5 * spec.mass * delta;
    const double half = 0.5 * delta;
    long long total_iterations = 0;
    int worst = 0;
    for (int n = 0; n + 1 < mesh.level_count(); ++n) {
        for (int j = 0; j < count; ++j) {
            const Complex u_up = j > 0 ? mesh.u(j - 1, n) : Complex{};
            const Complex v_up_u = j > 0 ? mesh.v(j - 1, n) : Complex{};
            const Complex v_up = j + 1 < count ? mesh.v(j + 1, n) : Complex{};
            const Complex u_up_v = j + 1 < count ? mesh.u(j + 1, n) : Complex{};
            const Complex pu = u_up - kI * mu * v_up_u;
            const Complex pv = v_up - kI * mu * u_up_v;
            const double a0 = 2.0 * norm2(v_up_u);
            const double b0 = 2.0 * norm2(u_up_v);

            Complex uu = u_up;
            Complex vv = v_up;
            int it = 0;
            bool converged = false;
            while (it < params.max_iterations) {
                ++it;
                const Complex un = std::polar(1.0, half * (a0 + 2.0 * norm2(vv))) * pu - kI * mu * vv;
                const Complex vn = std::polar(1.0, half * (b0 + 2.0 * norm2(un))) * pv - kI * mu * un;
                const double change = std::max(std::abs(un - uu), std::abs(vn - vv));
                uu = un;
                vv = vn;
                if (change <= params.fixed_point_tol * (1.0 + std::max(std::abs(uu), std::abs(vv)))) {
                    converged = true;
                    break;
                }
            }
            if (!converged) {
                throw StepSizeError("fixed-point iteration did not converge; reduce the mesh step");
            }
            total_iterations += it;
            worst = std::max(worst, it);
            mesh.u_mut(j, n + 1) = uu;
            mesh.v_mut(j, n + 1) = vv;
        }
    }
    if (stats != nullptr) {
        stats->max_iterations_used = worst;
        const double updates = static_cast<double>(count) * static_cast<double>(mesh.level_count() - 1);
        stats->mean_iterations = updates > 0.0 ? static_cast<double>(total_iterations) / updates : 0.0;
    }
    return mesh;
}

double global_charge(const CharacteristicMesh& mesh, int level) {
    if (level < 0 || level >= mesh.level_count()) {
        throw DomainError("level outside the mesh");
    }
    const int last = mesh.node_count() - 1;
    const auto density = [&](int j) { return norm2(mesh.u(j, level)) + norm2(mesh.v(j, level)); };
    if (density(0) != 0.0 || density(last) != 0.0) {
        throw DomainError("field does not vanish at the domain edges");
    }
    double sum = 0.0;
    for (int j = 1; j < last; ++j) {
        sum += density(j);
    }
    return mesh.delta() * sum;
}

PhiIntegrals phi_line_integrals(const CharacteristicMesh& mesh, double x, double t) {
    const int j = mesh.node_index(x);
    const int n = mesh.level_index(t);
    const ConeSides sides = cone_sides(mesh, j, n);
    const double d = mesh.delta();
    return {cumulative_phase(sides.v_left, d).back(), cumulative_phase(sides.u_right, d).back()};
}

double data_charge(const DataSpec& spec, double a, double b) {
    if (!(spec.epsilon > 0.0)) {
        throw DomainError("data charge needs epsilon > 0");
    }
    if (b < a) {
        return -data_charge(spec, b, a);
    }
    if (spec.cutoff) {
        a = std::max(a, -1.0);
        b = std::min(b, 1.0);
        if (b <= a) {
            return 0.0;
        }
    }
    const double eps = spec.epsilon;
    const double plus = std::norm(spec.kappa_plus) + std::norm(spec.lambda_plus);
    const double minus = std::norm(spec.kappa_minus) + std::norm(spec.lambda_minus);
    // ∫_0^c dy/(ε+y) = log1p(c/ε)
    const auto right = [&](double lo, double hi) { return std::log1p(hi / eps) - std::log1p(lo / eps); };
    double total = 0.0;
    if (b > 0.0) {
        total += plus * right(std::max(a, 0.0), b);
    }
    if (a < 0.0) {
        total += minus * right(std::max(-b, 0.0), -a);
    }
    return total;
}

ConeDiagnostics cone_charge(const CharacteristicMesh& mesh, const DataSpec& spec, double x, double t) {
    const int j = mesh.node_index(x);
    const int n = mesh.level_index(t);
    const ConeSides sides = cone_sides(mesh, j, n);
    const double d = mesh.delta();
    ConeDiagnostics diag;
    diag.x = x;
    diag.t = t;
    diag.flux_left = cumulative_phase(sides.v_left, d).back();
    diag.flux_right = cumulative_phase(sides.u_right, d).back();
    diag.base = data_charge(spec, mesh.x(j - n), mesh.x(j + n));
    diag.residual = std::abs(diag.flux_left + diag.flux_right - diag.base);
    return diag;
}

std::vector<double> a_functional_series(const CharacteristicMesh& mesh) {
    const int count = mesh.node_count();
    const int levels = mesh.level_count();
    const double d = mesh.delta();
    std::vector<double> result(static_cast<std::size_t>(levels), 0.0);

    // One running trapezoid per line start j0; `dir` = −1 follows x + t = y
    // (integrand |u|), +1 follows x − t = y (integrand |v|).
    for (int dir : {-1, 1}) {
        std::vector<double> sum(static_cast<std::size_t>(count), 0.0);
        std::vector<double> first(static_cast<std::size_t>(count), 0.0);
        std::vector<char> alive(static_cast<std::size_t>(count), 1);
        for (int n = 0; n < levels; ++n) {
            double best = 0.0;
            for (int j0 = 0; j0 < count; ++j0) {
                const auto k = static_cast<std::size_t>(j0);
                if (!alive[k]) {
                    continue;
                }
                const int j = j0 + dir * n;
                double g = 0.0;
                if (j >= 0 && j < count) {
                    if (!mesh.valid(j, n)) {
                        alive[k] = 0;
                        continue;
                    }
                    g = dir < 0 ? std::abs(mesh.u(j, n)) : std::abs(mesh.v(j, n));
                } else if (!mesh.exterior_exact()) {
                    alive[k] = 0;
                    continue;
                }
                if (n == 0) {
                    first[k] = g;
                }
                sum[k] += g;
                if (n > 0) {
                    best = std::max(best, d * (sum[k] - 0.5 * (first[k] + g)));
                }
            }
            result[static_cast<std::size_t>(n)] += best;
        }
    }
    return result;
}

double a_functional(const CharacteristicMesh& mesh, int level) {
    if (level < 0 || level >= mesh.level_count()) {
        throw DomainError("level outside the mesh");
    }
    return a_functional_series(mesh)[static_cast<std::size_t>(level)];
}

double gronwall_bound(double t, double mass) { return 8.0 * std::sqrt(t) * std::exp(2.0 * mass * t); }

double RemainderBundle::remainder_sum_abs() const { return std::abs(r1) + std::abs(r2) + std::abs(r3); }

RemainderBundle remainders(const CharacteristicMesh& mesh, const DataSpec& spec, double x, double t) {
    if (!(t > std::abs(x))) {
        throw DomainError("remainders need t > |x|");
    }
    if (!(spec.epsilon > 0.0)) {
        throw DomainError("remainders need epsilon > 0");
    }
    const int j = mesh.node_index(x);
    const int n = mesh.level_index(t);
    const ConeSides sides = cone_sides(mesh, j, n);
    const double d = mesh.delta();
    const std::vector<double> phi_minus = cumulative_phase(sides.u_right, d);
    const std::vector<double> phi_plus = cumulative_phase(sides.v_left, d);
    const Complex iu = damped_integral(sides.u_right, phi_minus, d);
    const Complex iv = damped_integral(sides.v_left, phi_plus, d);
    const Complex f = data_sample(spec, mesh.x(j - n)).u;
    const Complex g = data_sample(spec, mesh.x(j + n)).v;
    const double m = spec.mass;

    RemainderBundle out;
    out.r1 = f * (-kI * m * iu);
    out.r2 = g * (-kI * m * iv);
    out.r3 = -m * m * iu * iv;
    const double log_eps = std::log(spec.epsilon);
    const Complex rotation = std::polar(1.0, 4.0 * log_eps + phi_plus.back() + phi_minus.back());
    out.main_term = rotation * f * g;
    out.scaled_product = std::polar(1.0, 4.0 * log_eps) * mesh.u(j, n) * mesh.v(j, n);
    out.key_residual = std::abs(out.scaled_product - out.main_term - rotation * (out.r1 + out.r2 + out.r3));
    out.phase_defect =
        std::abs(phi_plus.back() + phi_minus.back() - data_charge(spec, mesh.x(j - n), mesh.x(j + n)));
    return out;
}

double remainder_constant(double mass) {
    const double c = 16.0 * std::exp(2.0 * mass);
    return 4.0 * mass * c + mass * mass * c * c;
}

void write_mesh_csv(std::ostream& out, const CharacteristicMesh& mesh, const std::vector<int>& levels) {
    std::vector<int> selected = levels;
    if (selected.empty()) {
        for (int n = 0; n < mesh.level_count(); ++n) {
            selected.push_back(n);
        }
    }
    out << "x,t,re_u,im_u,re_v,im_v\n";
    out.precision(17);
    for (int n : selected) {
        if (n < 0 || n >= mesh.level_count()) {
            throw DomainError("level outside the mesh");
        }
        for (int j = 0; j < mesh.node_count(); ++j) {
            if (!mesh.valid(j, n)) {
                continue;
            }
            const Complex& u = mesh.u(j, n);
            const Complex& v = mesh.v(j, n);
            out << mesh.x(j) << ',' << mesh.t(n) << ',' << u.real() << ',' << u.imag() << ',' << v.real() << ','
                << v.imag() << '\n';
        }
    }
}

void write_mesh_binary(std::ostream& out, const CharacteristicMesh& mesh) {
    out.write(kMagic, sizeof kMagic);
    put_f64(out, mesh.delta());
    put_f64(out, mesh.x_min());
    put_f64(out, mesh.x_max());
    put_u64(out, static_cast<std::uint64_t>(mesh.level_count()));
    for (int n = 0; n < mesh.level_count(); ++n) {
        for (int j = 0; j < mesh.node_count(); ++j) {
            put_f64(out, mesh.u(j, n).real());
            put_f64(out, mesh.u(j, n).imag());
            put_f64(out, mesh.v(j, n).real());
            put_f64(out, mesh.v(j, n).imag());
        }
    }
}

CharacteristicMesh read_mesh_binary(std::istream& in) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
        throw ConfigError("not a mesh dump");
    }
    const double delta = get_f64(in);
    const double x_min = get_f64(in);
    const double x_max = get_f64(in);
    const std::uint64_t levels = get_u64(in);
    if (!(delta > 0.0) || !(x_max > x_min) || levels == 0 || levels > (1u << 30)) {
        throw ConfigError("corrupt mesh header");
    }
    const auto origin = static_cast<std::int64_t>(std::llround(-x_min / delta));
    const auto nodes = static_cast<std::int64_t>(std::llround((x_max - x_min) / delta)) + 1;
    CharacteristicMesh mesh(delta, origin, static_cast<int>(nodes), static_cast<int>(levels), false);
    for (int n = 0; n < mesh.level_count(); ++n) {
        for (int j = 0; j < mesh.node_count(); ++j) {
            const double ur = get_f64(in);
            const double ui = get_f64(in);
            const double vr = get_f64(in);
            const double vi = get_f64(in);
            mesh.u_mut(j, n) = {ur, ui};
            mesh.v_mut(j, n) = {vr, vi};
        }
    }
    return mesh;
}

}  // namespace thirring

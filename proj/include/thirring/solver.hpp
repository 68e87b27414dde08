#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thirring/field_model.hpp"

namespace thirring {

/// Lattice parameters. Nodes sit at x_j = (j − origin)·Δ so that x = 0 and
/// the cutoff edges ±1 (when 1/Δ is an integer) are nodes.
struct MeshParams {
    double delta = 1e-3;
    double x_min = -2.0;
    double x_max = 2.0;
    double t_max = 0.5;
    double fixed_point_tol = 1e-12;
    int max_iterations = 50;

    /// Domain [−1 − T − margin, 1 + T + margin], wide enough that cutoff data
    /// never reach the edges before t_max.
    static MeshParams covering_cutoff(double delta, double t_max, double margin = 0.05);
    /// Domain [−half_width, half_width] for runs that only need the
    /// domain of dependence of a small set of points.
    static MeshParams local(double delta, double t_max, double half_width);
};

/// Solution on the light-cone lattice Δx = Δt = Δ: u is carried along mesh
/// diagonals x − t = const, v along x + t = const. Immutable once built.
class CharacteristicMesh {
public:
    CharacteristicMesh(double delta, std::int64_t origin, int node_count, int level_count,
                       bool exterior_exact);

    double delta() const { return delta_; }
    int node_count() const { return node_count_; }
    /// Number of stored time levels (t = 0 included).
    int level_count() const { return level_count_; }
    double x(int j) const { return static_cast<double>(j - origin_) * delta_; }
    double t(int n) const { return static_cast<double>(n) * delta_; }
    double x_min() const { return x(0); }
    double x_max() const { return x(node_count_ - 1); }
    double t_max() const { return t(level_count_ - 1); }
    std::int64_t origin() const { return origin_; }

    /// True when nodes outside the domain are known to vanish (cutoff data
    /// with the support cone inside the domain), so boundary inflow is exact.
    bool exterior_exact() const { return exterior_exact_; }

    /// Index of the node at x; throws DomainError if x is not a node.
    int node_index(double x) const;
    /// Index of the level at t; throws DomainError if t is not a level.
    int level_index(double t) const;

    /// Whether the backward cone of (j, n) lies in the computed region.
    bool valid(int j, int n) const;

    const Complex& u(int j, int n) const { return u_[flat(j, n)]; }
    const Complex& v(int j, int n) const { return v_[flat(j, n)]; }
    SpinorSample at(int j, int n) const { return {u(j, n), v(j, n)}; }

    Complex& u_mut(int j, int n) { return u_[flat(j, n)]; }
    Complex& v_mut(int j, int n) { return v_[flat(j, n)]; }

private:
    std::size_t flat(int j, int n) const {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(node_count_) + static_cast<std::size_t>(j);
    }

    double delta_;
    std::int64_t origin_;
    int node_count_;
    int level_count_;
    bool exterior_exact_;
    std::vector<Complex> u_;
    std::vector<Complex> v_;
};

struct SolveStats {
    int max_iterations_used = 0;
    double mean_iterations = 0.0;
};

/// Integrates (∂t+∂x)u = −imv + 2i|v|²u, (∂t−∂x)v = −imu + 2i|u|²v from the
/// data in `spec` (ε > 0). Each characteristic step applies the trapezoidal
/// rule in integrating-factor form,
///   u₁ = e^{iΔ(a₀+a₁)/2}(u₀ − i(mΔ/2)v₀) − i(mΔ/2)v₁,  a = 2|v|²,
/// and symmetrically for v, solved by fixed-point iteration from the upwind
/// values. Throws DomainError for Δ > ε/10 or when Δ(2 sup|data|² + m) ≥ 1,
/// StepSizeError when the iteration does not converge.
CharacteristicMesh solve(const DataSpec& spec, const MeshParams& params, SolveStats* stats = nullptr);

/// Trapezoidal ∫(|u|²+|v|²)dx over one level. DomainError when the field
/// does not vanish at the domain edges.
double global_charge(const CharacteristicMesh& mesh, int level);

struct PhiIntegrals {
    double phi_plus = 0.0;   ///< ∫₀ᵗ 2|v(x−t+σ,σ)|² dσ
    double phi_minus = 0.0;  ///< ∫₀ᵗ 2|u(x+t−σ,σ)|² dσ
};

PhiIntegrals phi_line_integrals(const CharacteristicMesh& mesh, double x, double t);

struct ConeDiagnostics {
    double x = 0.0;
    double t = 0.0;
    double flux_left = 0.0;   ///< ∫ 2|v|² along the left side
    double flux_right = 0.0;  ///< ∫ 2|u|² along the right side
    double base = 0.0;        ///< ∫_{x−t}^{x+t} (|f|²+|g|²) dy, closed form
    double residual = 0.0;    ///< |flux_left + flux_right − base|
};

ConeDiagnostics cone_charge(const CharacteristicMesh& mesh, const DataSpec& spec, double x, double t);

/// ∫_a^b (|f|²+|g|²) dy for the power family, closed form.
double data_charge(const DataSpec& spec, double a, double b);

/// A(t) = sup_y ∫₀ᵗ|u(y−σ,σ)|dσ + sup_y ∫₀ᵗ|v(y+σ,σ)|dσ for every level.
std::vector<double> a_functional_series(const CharacteristicMesh& mesh);
double a_functional(const CharacteristicMesh& mesh, int level);

/// 8 t^{1/2} e^{2mt}.
double gronwall_bound(double t, double mass);

struct RemainderBundle {
    Complex r1;
    Complex r2;
    Complex r3;
    /// e^{i(4 log ε + φ₊ + φ₋)} f(x−t) g(x+t) with φ± from the mesh sides.
    Complex main_term;
    Complex scaled_product;   ///< e^{4i log ε} u v at the apex
    double key_residual = 0.0;
    /// |φ₊ + φ₋ − ∫_{x−t}^{x+t}(|f|²+|g|²)|: distance of the mesh phases from
    /// the closed-form charge, i.e. of main_term from its closed form.
    double phase_defect = 0.0;

    double remainder_sum_abs() const;
};

/// Remainder terms of the integrated equations at (x, t), t > |x|, for unit
/// data: R₁ = f(x−t)(−im∫e^{−iφ₋}u), R₂ = g(x+t)(−im∫e^{−iφ₊}v),
/// R₃ = −m²(∫e^{−iφ₋}u)(∫e^{−iφ₊}v), each along the cone sides.
RemainderBundle remainders(const CharacteristicMesh& mesh, const DataSpec& spec, double x, double t);

/// C = 4mc + m²c², c = 16e^{2m}.
double remainder_constant(double mass);

/// Columnar text of every valid node at the listed levels (all levels when empty).
void write_mesh_csv(std::ostream& out, const CharacteristicMesh& mesh, const std::vector<int>& levels = {});

/// Little-endian binary dump: "THRMESH1", Δ, x_min, x_max (f64), level count
/// (u64), then per level and node re(u), im(u), re(v), im(v) as f64.
void write_mesh_binary(std::ostream& out, const CharacteristicMesh& mesh);
CharacteristicMesh read_mesh_binary(std::istream& in);

}  // namespace thirring

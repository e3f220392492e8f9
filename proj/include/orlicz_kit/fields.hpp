#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz_kit/ext_real.hpp"
#include "orlicz_kit/weights.hpp"
#include "orlicz_kit/young.hpp"

namespace okit {

using Point = std::array<real, 2>;  // second coordinate unused in 1D

/// Samples at cell centres of the window [-L, L]^n, zero outside.
/// Cell i has centre -L + (i + 1/2) h; N = round(2L/h) cells per axis.
class SampledField {
public:
    SampledField(int dim, real L, real h, std::vector<real> values);

    static SampledField zeros(int dim, real L, real h);
    /// f evaluated at the cell centres; in 1D the second argument is 0.
    static SampledField sample(int dim, real L, real h, const std::function<real(real, real)>& f);

    int dim() const { return dim_; }
    real L() const { return L_; }
    real h() const { return h_; }
    int n_per_axis() const { return N_; }
    real cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }
    real centre(int i) const { return -L_ + (i + real(0.5)) * h_; }
    Point point(size_t flat) const;

    const std::vector<real>& values() const { return values_; }
    real operator[](size_t flat) const { return values_[flat]; }
    size_t size() const { return values_.size(); }

    SampledField with_values(std::vector<real> v) const { return SampledField(dim_, L_, h_, std::move(v)); }

private:
    int dim_;
    real L_, h_;
    int N_;
    std::vector<real> values_;
};

struct Ball {
    Point centre{0, 0};
    real r = 1;
};

/// Volume of the continuum ball: 2r in 1D, pi r^2 in 2D.
real ball_volume(int dim, real r);

/// Cells with centre inside the open ball, as runs of flat indices inside
/// the window, plus the number of lattice cells in the ball counted without
/// clipping to the window (the zero extension still occupies them).
struct BallCells {
    std::vector<std::pair<size_t, size_t>> runs;  // [begin, end)
    size_t lattice_count = 0;
};
BallCells cells_in(const SampledField& f, const Ball& B);

/// |f| restricted to the cells of B.
std::vector<real> magnitudes_in(const SampledField& f, const Ball& B);

struct BallFamily {
    std::vector<Point> centres;
    std::vector<real> radii;
    size_t size() const { return centres.size() * radii.size(); }
};

/// Centres at every cell centre and radii r0 kappa^j, j = 0..J.
BallFamily geometric_family(const SampledField& f, real r0, real kappa, int J);

/// All cell centres with radii h 2^{k/2} up to 2L.
BallFamily default_family(const SampledField& f);

/// h^n times the number of cells of G with |f| > t; G = whole window when
/// empty.
real distribution(const SampledField& f, const std::optional<Ball>& G, real t);

/// Plain average of the samples in B (zero extension included).
real ball_mean(const SampledField& f, const Ball& B);
real ball_abs_mean(const SampledField& f, const Ball& B);

/// Luxemburg ball norm: inf of lambda with
/// (1/phi(r)) (1/|B|) int_B Phi(|f|/lambda) <= 1.
real luxemburg_norm(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi, const Ball& B);

/// Weak ball norm: same inf with sup_t Phi(t) m(B, f/lambda, t) / (|B| phi(r)).
real weak_norm(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi, const Ball& B);

/// Norm inf lambda with modular(lambda) <= 1 for a nonincreasing modular.
/// Returns inf when no lambda up to 1e30 times the start works.
real norm_from_modular(const std::function<real(real)>& modular, real start, std::string* diagnostic = nullptr);

struct GlobalNorm {
    real value = 0;
    Ball argmax;
    size_t skipped = 0;
};
GlobalNorm global_norm(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi,
                       const BallFamily& F, bool weak);

/// Whole-window Orlicz norm inf{lambda : int Phi(|f|/lambda) <= 1}.
real orlicz_norm(const SampledField& f, const YoungFunction& Phi);

struct HolderResult {
    real lhs = 0, rhs = 0;
    bool ok = true;
};
/// (1/(|B| phi(r))) int_B |fg| against 2 ||f||_{Phi,phi,B} ||g||_{conj Phi,phi,B}.
HolderResult holder_pairing(const SampledField& f, const SampledField& g, const YoungFunction& Phi,
                            const YoungFunction& Phi_conj, const WeightFunction& phi, const Ball& B);

struct WeakTypeIdentity {
    real s1 = 0, s2 = 0, s3 = 0;
    bool ok = true;
};
/// s1 = sup Phi(t) m(B,f,t), s2 = sup t m(B,f,Phi^{-1}(t)),
/// s3 = sup t m(B,Phi(|f|),t); exact over the candidate sets.
WeakTypeIdentity weak_type_identity(const SampledField& f, const YoungFunction& Phi,
                                    const std::optional<Ball>& B);

/// 1D: "x,value" rows.  2D: header "n,L,h", one line with those values,
/// then N rows of N values.
SampledField read_field_csv(const std::string& path);
void write_field_csv(const SampledField& f, const std::string& path);

} // namespace okit

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fracdom/complex.hpp"
#include "fracdom/engine.hpp"
#include "fracdom/expr.hpp"

namespace fracdom::transforms {

// Sum of a_j (z - b)^j over integer degrees j, possibly negative.
class SparseLaurentPolynomial {
public:
    SparseLaurentPolynomial() = default;
    explicit SparseLaurentPolynomial(const std::map<int, Complex>& terms, Complex center = 0.0);

    // Adds to the stored coefficient; terms that cancel to zero are erased.
    void add_term(int degree, Complex coefficient);
    Complex coefficient(int degree) const noexcept;

    const std::map<int, Complex>& terms() const noexcept { return terms_; }
    Complex center() const noexcept { return center_; }
    bool empty() const noexcept { return terms_.empty(); }
    int lowest_degree() const;
    int highest_degree() const;

    // Degrees >= 2, optionally with a constant term; no linear term.
    bool is_left_truncated() const noexcept;
    bool has_negative_degree() const noexcept;

    Complex evaluate(Complex z) const noexcept;

    // Terms in ascending degree; a term whose coefficient leads with a minus
    // sign is emitted as a subtraction.
    expr::Expr to_expr() const;
    // to_expr() + c
    expr::Expr to_map() const;

    friend bool operator==(const SparseLaurentPolynomial&, const SparseLaurentPolynomial&) = default;

private:
    std::map<int, Complex> terms_;
    Complex center_{0.0, 0.0};
};

// "coef:degree,coef:degree"; a coefficient may be complex, written re or re+imi / re-imi.
SparseLaurentPolynomial parse_term_list(std::string_view text);

// Polynomial in z read off an expression. A trailing "+ c" is stripped.
// Throws NotExpandable for anything that is not a polynomial in z.
SparseLaurentPolynomial polynomial_from_expr(const expr::Expr& e);

struct TransformSpec {
    double u_scale = 1.0;
    double theta = 0.0;
    Complex b{0.0, 0.0};

    // theta reduced to (-pi, pi]; builders use the raw value.
    double normalized_theta() const noexcept;
};

// a_j -> u^(1-j) e^(i(j-1)theta) a_j, recentered at b. Constant terms use the same formula.
// Throws TruncationError on a degree-1 term, DomainError on u <= 0 or a nonzero center.
SparseLaurentPolynomial transform_polynomial(const SparseLaurentPolynomial& poly,
                                             const TransformSpec& spec);

// Plane motion taking the original image to the transformed one: c' = rotation * c + shift.
struct Motion {
    Complex rotation{1.0, 0.0};
    Complex shift{0.0, 0.0};

    Complex apply(Complex c) const noexcept { return rotation * c + shift; }
    Complex invert(Complex c) const noexcept { return (c - shift) / rotation; }
};

Motion motion_of(const TransformSpec& spec) noexcept;

inline constexpr std::string_view kEscapeRadiusNote = "escape radius must be re-examined";

struct BuiltMap {
    expr::Expr map;
    std::vector<std::string> notes;
};

// transform_polynomial followed by to_map(), with a note when negative degrees appear.
BuiltMap build_transformed(const SparseLaurentPolynomial& poly, const TransformSpec& spec);

// (z - a)^n + c
expr::Expr build_translated(double n, Complex a);

struct RotatedMap {
    expr::Expr map;
    double rho;      // theta / (n - 1)
    bool clockwise;  // n > 0
    std::vector<std::string> notes;
};

// e^(i theta) z^n + c
RotatedMap build_rotated(double n, double theta);

struct ScaledMap {
    expr::Expr map;
    double sigma;  // a^(1/(1-n))
};

// a z^n + c
ScaledMap build_scaled(double n, double a);

struct SptMap {
    expr::Expr map;
    Complex translation;
    double rotation;  // arg(a) / (n - 1)
    bool clockwise;
    double scale;  // |a|^(1/(1-n))
    std::string description;
};

// a (z - b)^n + c
SptMap build_spt(double n, Complex a, Complex b);

// s e^(i phi) f(z - a) + c
expr::Expr build_zoom(const expr::Expr& f, double s, double phi, Complex a);

inline constexpr double kOrbitGuard = 1e6;

// Dual iteration of the base map z^n + c and its transformed counterpart,
// carried out in binary128. Each returns max_l |t_l - expected(z_l)| for l <= L,
// stopping once |z_l| exceeds kOrbitGuard.
double verify_translation(int n, Complex a, Complex c, int iterations);
double verify_rotation(int n, double theta, Complex c, int iterations);
double verify_scaling(int n, double a, Complex c, int iterations);

struct MaskAgreement {
    double fraction;       // agreeing pixels / compared pixels
    std::size_t compared;  // pixels whose image lands inside the transformed grid
};

// For each pixel of `original`, map its plane point through `motion`, look up the
// nearest pixel of `transformed`, and compare interior flags.
MaskAgreement mask_agreement(const engine::EscapeGrid& original, const engine::Viewport& vo,
                             const engine::EscapeGrid& transformed, const engine::Viewport& vt,
                             const Motion& motion);

// Viewport covering motion(v): same pixel grid, center moved, scale times |rotation|.
engine::Viewport moved_viewport(const engine::Viewport& v, const Motion& motion) noexcept;

// Disagreement between z^n + c and e^(i theta) z^n + c after undoing the predicted
// rotation. Near zero for integer n; informative only for fractional n.
double rotation_mask_difference(double n, double theta, const engine::Viewport& v, int max_iter,
                                double log_k, unsigned workers = 0);

}  // namespace fracdom::transforms

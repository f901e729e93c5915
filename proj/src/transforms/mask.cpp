#include "fracdom/error.hpp"
#include "fracdom/transforms.hpp"

namespace fracdom::transforms {

MaskAgreement mask_agreement(const engine::EscapeGrid& original, const engine::Viewport& vo,
                             const engine::EscapeGrid& transformed, const engine::Viewport& vt,
                             const Motion& motion)
{
    if (original.width() != vo.width || original.height() != vo.height ||
        transformed.width() != vt.width || transformed.height() != vt.height) {
        throw DomainError("grid and viewport dimensions differ");
    }
    std::size_t compared = 0;
    std::size_t agree = 0;
    for (int py = 0; py < vo.height; ++py) {
        for (int px = 0; px < vo.width; ++px) {
            const auto [fx, fy] = vt.plane_to_pixel(motion.apply(vo.pixel_to_plane(px, py)));
            const long tx = std::lround(fx);
            const long ty = std::lround(fy);
            if (tx < 0 || ty < 0 || tx >= vt.width || ty >= vt.height) {
                continue;
            }
            ++compared;
            if (original.interior(px, py) ==
                transformed.interior(static_cast<int>(tx), static_cast<int>(ty))) {
                ++agree;
            }
        }
    }
    return {compared == 0 ? 0.0 : static_cast<double>(agree) / compared, compared};
}

engine::Viewport moved_viewport(const engine::Viewport& v, const Motion& motion) noexcept
{
    return {motion.apply(v.center), v.scale * std::abs(motion.rotation), v.width, v.height};
}

double rotation_mask_difference(double n, double theta, const engine::Viewport& v, int max_iter,
                                double log_k, unsigned workers)
{
    const RotatedMap rotated = build_rotated(n, theta);
    const expr::Expr base = pow(expr::Expr::z(), expr::literal(n)) + expr::Expr::c();
    const Motion motion{std::polar(1.0, -rotated.rho), 0.0};
    const engine::Viewport vt = moved_viewport(v, motion);
    const engine::EscapeGrid a =
        engine::render(v, {vm::compile(base), log_k, max_iter, "gray256"}, {workers});
    const engine::EscapeGrid b =
        engine::render(vt, {vm::compile(rotated.map), log_k, max_iter, "gray256"}, {workers});
    return 1.0 - mask_agreement(a, v, b, vt, motion).fraction;
}

}  // namespace fracdom::transforms

#include "jumpvex/model.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpvex {

Coefficients Model::eval(double x, double t, double z, double horizon) const {
    if (!(x > 0.0)) throw std::domain_error("model eval: x must be positive");
    if (!(t >= 0.0) || t > horizon)
        throw std::domain_error("model eval: t outside [0, horizon]");
    if (!measure.label_in_space(z))
        throw std::domain_error("model eval: jump label outside the measure's parameter space");
    Coefficients c;
    c.diffusion = diffusion(x, t);
    c.jump_size = jump_size(x, t, z);
    c.intensity = intensity(1.0, t);
    return c;
}

void validate_model(const Model& model, double horizon) {
    if (!(model.gamma > -1.0)) throw std::invalid_argument("model: gamma must exceed -1");
    if (!model.intensity.is_time_only())
        throw std::invalid_argument("model: intensity must depend on t only");
    const int n = 65;
    for (int i = 0; i < n; ++i) {
        const double t = horizon * i / (n - 1);
        if (model.intensity(1.0, t) < 0.0)
            throw std::invalid_argument("model: intensity negative at t=" + std::to_string(t));
    }
}

Model counterexample_model() {
    Model m;
    m.label = "counterexample";
    m.diffusion = CoefficientSpec::zero();
    m.intensity = CoefficientSpec::constant(1.0);
    m.measure = MeasureSpec::lebesgue_unit();
    // The trapezoid vanishes off (0.5, 0.75) and exceeds 1 on (0.55, 0.70);
    // ramps have slope 1.2 / 0.05 = 24.
    m.jump_size = JumpSizeSpec::bump(BumpX{0.5, 0.55, 0.70, 0.75, 1.2});
    m.gamma = -0.5;
    return m;
}

}  // namespace jumpvex

#include "orlicz_kit/catalog.hpp"

namespace okit {

YoungFunction catalog_table()
{
    std::vector<real> t, v;
    for (int k = 0; k <= 10; ++k) {
        t.push_back(k);
        v.push_back(static_cast<real>(k * k) / 2);
    }
    return YoungFunction::tabulated(t, v);
}

std::vector<YoungFunction> young_catalog()
{
    return {YoungFunction::power(2),        YoungFunction::power_over_p(3),
            YoungFunction::capped_linear(), YoungFunction::shifted_square(),
            YoungFunction::exp_power(1),    YoungFunction::jump(1),
            catalog_table()};
}

std::vector<WeightFunction> weight_catalog(int n)
{
    // a decreasing staircase: constant on dyadic blocks, halving per block
    std::vector<real> r, v;
    for (int k = -20; k <= 20; ++k) {
        real lo = std::exp2(static_cast<real>(k));
        real val = std::exp2(static_cast<real>(-k) * n);
        r.push_back(lo);
        v.push_back(val);
        r.push_back(lo * 1.999L);
        v.push_back(val);
    }
    return {WeightFunction::reciprocal_power_n(n), WeightFunction::power(-static_cast<real>(n) / 2),
            WeightFunction::power_with_log(-static_cast<real>(n) / 2, 1), WeightFunction::constant(1),
            WeightFunction::tabulated(r, v)};
}

std::vector<KernelFunction> kernel_catalog()
{
    return {KernelFunction::power(0.25L), KernelFunction::power(0.5L), KernelFunction::log_kernel(1),
            KernelFunction::bessel_type(0.5L).with_window(0.5L, 2)};
}

} // namespace okit

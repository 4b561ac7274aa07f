// Frozen realization of synthetic_experiment_spec(fixture_seed), identical to
// data/fixture_synthetic.csv.

#include "srsd/synthgen.hpp"

namespace srsd::synth {

namespace {

const std::vector<double> fixture_x{
    -2.04347238, -2.80814759, -0.663797752, -1.56067442, -0.32688949,
    -0.0225443272, -0.542424571, -0.467344417, -2.43784884, -1.0924423,
    0.596181351, 0.519273723, 1.01355092, 1.52733032, 0.334508516,
    -1.8829585, -0.437791063, -2.01761639, -0.86356414, -2.84007068,
    -0.400888087, 0.402173326, -0.534113062, -1.7732486, -0.577314288,
    2.2943459, 2.96964561, 0.55121792, -0.328213984, 2.48173271,
    1.06026051, 1.99845714, 0.201466659, 0.209045621, 1.53613046,
    -0.33231031, 3.99218808, 1.18616702, 3.0473423, 1.82666943,
    0.905127152, 0.405216435, 1.10385575, 1.52119925, 0.218936039,
    0.773533566, 3.28942672, 2.39694842, 1.09221569, 2.78872879,
    -3.36195231, 4.15595771, -1.86164308, 3.72306925, 6.52296245,
    -3.62335741, 1.79333854, -1.82553961, 4.04652772, -1.81028008,
    0.199645915, 0.994026472, -0.266854965, -3.35100634, -1.2001023,
    1.4286473, 2.40481693, 1.7104342, 5.94093919, 0.464927095};

const std::vector<double> fixture_y{
    6.53864811, 5.05546002, 1.34493321, 2.65583318, 1.25892314,
    -3.54150117, 4.8385379, -2.01776958, 5.16178154, -0.874011662,
    -2.66587887, -3.9318659, 1.72325317, 0.343920802, -1.12119338,
    2.17444826, -2.93140946, 3.47562387, 0.237432461, 11.0567784,
    1.81110829, 1.02417864, 0.264905146, 1.1795671, 0.581450476,
    1.27786185, -0.604696831, 1.33883996, 1.23251912, -0.41575552,
    1.38235132, -1.39902748, 1.72030957, 1.52692281, 0.425171359,
    0.712400892, 2.55050023, 0.589611575, 2.03311523, 0.909138941,
    -0.474772358, -1.02642829, -1.19717662, -1.11734375, -1.65109709,
    -1.22121641, -0.261574736, -1.05990844, -1.23851502, 0.858403836,
    -1.32300457, -0.422168261, -1.63569751, -0.23314236, -0.456459207,
    -0.521849658, -1.15041465, -1.38888557, -0.215674299, 0.0163518929,
    -1.53621598, -2.39421749, -1.03286263, -2.01357987, -0.194214901,
    -1.00906302, 0.239829839, -0.243249271, -0.0868327106, 1.12798795};

}  // namespace

CanonicalFixture canonical_fixture() {
    std::vector<double> index(fixture_x.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i + 1);
    return {TimeSeries(fixture_x, index, "x"), TimeSeries(fixture_y, index, "y"), {}};
}

}  // namespace srsd::synth

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "faceflow/strain.hpp"

#include "test_support.hpp"

using namespace faceflow;

namespace {

// u = a x + b y, v = c x + d y sampled on the grid: constant-gradient flow.
FlowField linear_flow(int h, int w, double a, double b, double c, double d) {
    FlowField f(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.set(y, x, {a * x + b * y, c * x + d * y});
    return f;
}

} // namespace

TEST_CASE("strain golden: diagonal (3,4,0) has norm 5") {
    // u = 3x, v = 4y: e_xx = 3, e_yy = 4, e_xy = 0.
    StrainField s = strain_tensor(linear_flow(6, 7, 3, 0, 0, 4));
    CHECK(s.e_xx.at(2, 2) == 3.0);
    CHECK(s.e_yy.at(2, 2) == 4.0);
    CHECK(s.e_xy.at(2, 2) == 0.0);
    ScalarField n = strain_norm(s);
    CHECK(n.at(2, 2) == 5.0);
    CHECK(n.at(0, 0) == 5.0);
}

TEST_CASE("strain golden: pure shear 1 has norm sqrt(2)") {
    // u = y, v = x: e_xy = (1 + 1)/2 = 1, diagonal zero.
    StrainField s = strain_tensor(linear_flow(5, 5, 0, 1, 1, 0));
    CHECK(s.e_xx.at(1, 1) == 0.0);
    CHECK(s.e_yy.at(1, 1) == 0.0);
    CHECK(s.e_xy.at(1, 1) == 1.0);
    CHECK(strain_norm(s).at(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("linearized rigid rotation produces no strain") {
    // u = -w y, v = w x is the rotation generator; its symmetric gradient
    // vanishes, leaving only the antisymmetric (rotational) part.
    StrainField s = strain_tensor(linear_flow(20, 20, 0, -0.3, 0.3, 0));
    ScalarField n = strain_norm(s);
    for (int y = 0; y < 19; ++y)
        for (int x = 0; x < 19; ++x) CHECK(n.at(y, x) <= 1e-9);
}

TEST_CASE("strain is linear in the flow") {
    std::mt19937_64 rng(21);
    FlowField f(12, 12), g(12, 12);
    for (double& d : f.data) d = testsup::uniform(rng, -2, 2);
    for (double& d : g.data) d = testsup::uniform(rng, -2, 2);
    FlowField mix(12, 12);
    for (size_t i = 0; i < mix.data.size(); ++i)
        mix.data[i] = 2.0 * f.data[i] - 0.5 * g.data[i];
    StrainField sf = strain_tensor(f), sg = strain_tensor(g),
                sm = strain_tensor(mix);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 12; ++x) {
            CHECK(sm.e_xx.at(y, x) ==
                  doctest::Approx(2 * sf.e_xx.at(y, x) - 0.5 * sg.e_xx.at(y, x))
                      .epsilon(1e-12));
            CHECK(sm.e_xy.at(y, x) ==
                  doctest::Approx(2 * sf.e_xy.at(y, x) - 0.5 * sg.e_xy.at(y, x))
                      .epsilon(1e-12));
        }
}

TEST_CASE("strain tensor needs at least a 2x2 grid") {
    CHECK_THROWS_AS(strain_tensor(FlowField(1, 4)), DimensionMismatch);
    CHECK_THROWS_AS(strain_tensor(FlowField(4, 1)), DimensionMismatch);
}

TEST_CASE("strain feature layout and values") {
    FlowField f = linear_flow(28, 28, 3, 0, 0, 4);
    ImageF feat = strain_feature(f); // default 28x28: resize is the identity
    REQUIRE(feat.height == 28);
    REQUIRE(feat.width == 28);
    REQUIRE(feat.channels == 3);
    CHECK(feat.at(5, 4, 0) == f.u(5, 4));
    CHECK(feat.at(5, 4, 1) == f.v(5, 4));
    CHECK(feat.at(5, 4, 2) == 5.0); // the strain norm channel

    ImageF small = strain_feature(f, 7, 9);
    CHECK(small.height == 7);
    CHECK(small.width == 9);
}

TEST_CASE("feature files round trip") {
    testsup::ScopedTempDir tmp("feature");
    std::mt19937_64 rng(22);
    ImageF feat(5, 6, 3);
    for (double& d : feat.data)
        d = double(float(testsup::uniform(rng, -10, 10)));
    auto path = tmp.path() / "f.bin";
    write_feature(feat, path);
    ImageF back = read_feature(path);
    REQUIRE(back.height == 5);
    REQUIRE(back.width == 6);
    REQUIRE(back.channels == 3);
    CHECK(back.data == feat.data); // float-representable values are exact
}

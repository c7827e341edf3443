// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support/oracles.hpp"
#include "support/testutil.hpp"
#include "vxc/loss/objectives.hpp"

using namespace vxc;
using namespace vxc::nn;
namespace L = vxc::loss;

namespace {

Tensor random_tensor(const Shape& s, std::mt19937_64& rng, double lo, double hi) {
    Tensor t(s);
    for (std::size_t i = 0; i < t.numel(); ++i) t[i] = util::uniform(rng, lo, hi);
    return t;
}

Tensor random_binary(const Shape& s, std::mt19937_64& rng) {
    Tensor t(s);
    for (std::size_t i = 0; i < t.numel(); ++i) t[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
    return t;
}

/// Critic whose mean-latent output is the fixed linear form <w, candidate>.
L::CriticFn linear_critic(const Variable& w) {
    return [w](const Variable&, const Variable& cand) {
        const int batch = cand.shape()[0];
        const int n = static_cast<int>(cand.value().numel()) / batch;
        return matmul(reshape(cand, {batch, n}), w, false, true); // [B,1]
    };
}

} // namespace

TEST_CASE("loss weight validation") {
    L::LossWeights w;
    w.validate();
    w.beta = 1.0; // reconstruction-only ablation is legal
    w.validate();
    w.alpha = 1.0;
    CHECK_THROWS_AS(w.validate(), ArgumentError);
    w.alpha = 0.85;
    w.lambda = -1;
    CHECK_THROWS_AS(w.validate(), ArgumentError);
}

TEST_CASE("weighted reconstruction loss: closed forms") {
    // single voxel, y=1, y'=0.5 -> alpha * ln 2
    const Variable pred1 = Variable::constant(Tensor(Shape{1, 1}, 0.5));
    const Variable target1 = Variable::constant(Tensor(Shape{1, 1}, 1.0));
    CHECK(L::l_ae(pred1, target1, 0.85).scalar() ==
          doctest::Approx(0.85 * std::log(2.0)).epsilon(1e-12));

    // y=0, y'=0.5 -> (1-alpha) * ln 2: false positives cost more (alpha on y=1)
    const Variable target0 = Variable::constant(Tensor(Shape{1, 1}, 0.0));
    CHECK(L::l_ae(pred1, target0, 0.85).scalar() ==
          doctest::Approx(0.15 * std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(L::l_ae(pred1, Variable::constant(Tensor(Shape{1, 2})), 0.85), ShapeError);
}

TEST_CASE("l_ae at alpha=0.5 is exactly half the standard BCE") {
    std::mt19937_64 rng(61);
    const Shape s{2, 64};
    const Variable pred = Variable::constant(random_tensor(s, rng, 0.05, 0.95));
    const Variable target = Variable::constant(random_binary(s, rng));
    // standard BCE via the two complementary weightings
    const double both = L::l_ae(pred, target, 0.3).scalar() + L::l_ae(pred, target, 0.7).scalar();
    const double half = L::l_ae(pred, target, 0.5).scalar();
    CHECK(half == doctest::Approx(both / 2.0).epsilon(1e-12));
}

TEST_CASE("l_ae(alpha) + l_ae(1-alpha) reconstructs the unweighted BCE") {
    std::mt19937_64 rng(67);
    const Shape s{3, 4, 4, 4, 1};
    for (int trial = 0; trial < 10; ++trial) {
        const Variable pred = Variable::constant(random_tensor(s, rng, 1e-5, 1.0 - 1e-5));
        const Variable target = Variable::constant(random_binary(s, rng));
        const double alpha = util::uniform(rng, 0.05, 0.95);
        const double sum =
            L::l_ae(pred, target, alpha).scalar() + L::l_ae(pred, target, 1.0 - alpha).scalar();
        // unweighted BCE computed independently
        double bce = 0.0;
        for (std::size_t i = 0; i < pred.value().numel(); ++i) {
            double q = std::clamp(pred.value()[i], 1e-7, 1.0 - 1e-7);
            bce -= target.value()[i] * std::log(q) +
                   (1.0 - target.value()[i]) * std::log(1.0 - q);
        }
        bce /= static_cast<double>(pred.value().numel());
        CHECK(std::fabs(sum - bce) < 1e-10);
    }
}

TEST_CASE("l_ae gradient with respect to predictions matches finite differences") {
    std::mt19937_64 rng(71);
    const Shape s{2, 4, 4, 4, 1};
    Variable pred = Variable::parameter(random_tensor(s, rng, 0.05, 0.95));
    const Variable target = Variable::constant(random_binary(s, rng));
    auto build = [&] { return L::l_ae(pred, target, 0.85); };
    const auto g = grad(build(), {pred});
    auto eval = [&] { return build().scalar(); };
    CHECK(oracle::max_grad_rel_err(eval, pred, g[0].value(), 1e-6) < 1e-6);
}

TEST_CASE("generator adversarial loss is the negated mean") {
    const Variable c = Variable::constant(Tensor(Shape{3, 5}, 0.42));
    CHECK(L::l_gan_g(c).scalar() == doctest::Approx(-0.42).epsilon(1e-15));

    const Variable two = Variable::constant(Tensor(Shape{1, 2}, std::vector<double>{0.2, 0.8}));
    CHECK(L::l_gan_g(two).scalar() == doctest::Approx(-0.5).epsilon(1e-15));

    // gradient w.r.t. every latent entry is -1/(B*len)
    Variable lat = Variable::parameter(Tensor(Shape{2, 4}, 0.1));
    const auto g = grad(L::l_gan_g(lat), {lat});
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(g[0].value()[i] == doctest::Approx(-1.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("gradient penalty: linear critic closed forms") {
    std::mt19937_64 rng(73);
    const int n = 27; // 3^3 "grid"
    const Shape vol{2, 1, 3, 3, 3};
    const Variable cond = Variable::constant(random_binary(vol, rng));
    const Variable real = Variable::constant(random_binary(vol, rng));
    const Variable fake = Variable::constant(random_tensor(vol, rng, 0.1, 0.9));
    const std::vector<double> eps{0.3, 0.7};

    // unit-norm w -> penalty 0
    Tensor w(Shape{1, n});
    for (int i = 0; i < n; ++i) w[std::size_t(i)] = 1.0 / std::sqrt(double(n));
    const double gp1 =
        L::gradient_penalty(linear_critic(Variable::parameter(w)), cond, real, fake, eps)
            .scalar();
    CHECK(std::fabs(gp1) < 1e-6);

    // norm-3 w -> penalty (3-1)^2 = 4
    Tensor w3(Shape{1, n});
    for (int i = 0; i < n; ++i) w3[std::size_t(i)] = 3.0 / std::sqrt(double(n));
    const double gp3 =
        L::gradient_penalty(linear_critic(Variable::parameter(w3)), cond, real, fake, eps)
            .scalar();
    CHECK(gp3 == doctest::Approx(4.0).epsilon(1e-10));

    CHECK_THROWS_AS(
        L::gradient_penalty(linear_critic(Variable::parameter(w)), cond, real, fake, {0.5}),
        ArgumentError);
    CHECK_THROWS_AS(L::gradient_penalty(linear_critic(Variable::parameter(w)), cond, real, fake,
                                        {0.5, 1.5}),
                    ArgumentError);
}

TEST_CASE("gradient penalty interpolates with the given epsilon draws") {
    // quadratic critic: mean-latent = 0.5*||yhat||^2, so grad = yhat and the
    // penalty reveals ||yhat|| directly.
    std::mt19937_64 rng(79);
    const Shape vol{1, 1, 2, 2, 2};
    auto quad_critic = [](const Variable&, const Variable& cand) {
        const int batch = cand.shape()[0];
        return reshape(scale(sum_per_sample(square(cand)), 0.5), {batch, 1});
    };
    Tensor a(vol, 0.0), b(vol);
    for (std::size_t i = 0; i < b.numel(); ++i) b[i] = util::uniform01(rng);

    auto norm_of = [&](const Tensor& t) {
        double s = 0;
        for (std::size_t i = 0; i < t.numel(); ++i) s += t[i] * t[i];
        return std::sqrt(s);
    };
    // eps = 0 -> yhat is exactly the fake endpoint b
    const double gp0 = L::gradient_penalty(quad_critic, Variable::constant(a),
                                           Variable::constant(a), Variable::constant(b), {0.0})
                           .scalar();
    CHECK(gp0 == doctest::Approx(std::pow(norm_of(b) - 1.0, 2)).epsilon(1e-12));
    // eps = 1 -> yhat is the first endpoint (zeros): (0-1)^2 = 1
    const double gp1 = L::gradient_penalty(quad_critic, Variable::constant(a),
                                           Variable::constant(a), Variable::constant(b), {1.0})
                           .scalar();
    CHECK(gp1 == doctest::Approx(1.0).epsilon(1e-12));
    // intermediate eps
    Tensor mix(vol);
    for (std::size_t i = 0; i < mix.numel(); ++i) mix[i] = 0.25 * a[i] + 0.75 * b[i];
    const double gpm = L::gradient_penalty(quad_critic, Variable::constant(a),
                                           Variable::constant(a), Variable::constant(b), {0.25})
                           .scalar();
    CHECK(gpm == doctest::Approx(std::pow(norm_of(mix) - 1.0, 2)).epsilon(1e-12));
}

TEST_CASE("gradient penalty is non-negative for a real critic") {
    const auto spec = ModelSpec::toy(8, 2, 83);
    const Discriminator disc(spec);
    std::mt19937_64 rng(89);
    const Shape vol{3, 1, 8, 8, 8};
    const Variable cond = Variable::constant(random_binary(vol, rng));
    const Variable real = Variable::constant(random_binary(vol, rng));
    const Variable fake = Variable::constant(random_tensor(vol, rng, 0.0, 1.0));
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> eps;
        for (int b = 0; b < 3; ++b) eps.push_back(util::uniform01(rng));
        CHECK(L::gradient_penalty(disc, cond, real, fake, eps).scalar() >= 0.0);
    }
}

TEST_CASE("second-order path: d(lambda*GP)/d(critic params) matches finite differences") {
    const auto spec = ModelSpec::toy(8, 2, 97);
    const Discriminator disc(spec);
    std::mt19937_64 rng(101);
    const Shape vol{2, 1, 8, 8, 8};
    const Variable cond = Variable::constant(random_binary(vol, rng));
    const Variable real = Variable::constant(random_binary(vol, rng));
    const Variable fake = Variable::constant(random_tensor(vol, rng, 0.1, 0.9));
    const std::vector<double> eps{0.4, 0.6};
    const double lambda = 10.0;

    auto build = [&] {
        return scale(L::gradient_penalty(disc, cond, real, fake, eps), lambda);
    };
    std::vector<Variable> vars;
    for (const auto& np : disc.params()) vars.push_back(np.var);
    const auto grads = grad(build(), vars);
    auto eval = [&] { return build().scalar(); };
    for (std::size_t i = 0; i < vars.size(); ++i)
        CHECK(oracle::max_grad_rel_err(eval, vars[i], grads[i].value(), 1e-5, 60, 500 + i) <
              1e-3);
}

TEST_CASE("gradient penalty interpolant modes are both available and differ") {
    // real_fake mixes ground truth with the fake; input_fake mixes the
    // conditioning view with the fake. With distinct endpoints the penalty
    // values must differ for a generic critic.
    const auto spec = ModelSpec::toy(8, 2, 103);
    const Discriminator disc(spec);
    std::mt19937_64 rng(107);
    const Shape vol{2, 1, 8, 8, 8};
    const Variable cond = Variable::constant(random_binary(vol, rng));
    const Variable real = Variable::constant(random_binary(vol, rng));
    const Variable fake = Variable::constant(random_tensor(vol, rng, 0.1, 0.9));
    const std::vector<double> eps{0.5, 0.5};
    const double via_real = L::gradient_penalty(disc, cond, real, fake, eps).scalar();
    const double via_input = L::gradient_penalty(disc, cond, cond, fake, eps).scalar();
    CHECK(via_real >= 0.0);
    CHECK(via_input >= 0.0);
    CHECK(via_real != via_input);
}

TEST_CASE("critic loss arithmetic") {
    const Variable real = Variable::constant(Tensor(Shape{2, 3}, 0.9));
    const Variable fake = Variable::constant(Tensor(Shape{2, 3}, 0.2));
    const Variable gp0 = Variable::constant(Tensor::scalar(0.0));
    CHECK(L::l_gan_d(real, fake, gp0, 10.0).scalar() == doctest::Approx(-0.7).epsilon(1e-12));

    CHECK(L::l_gan_d(real, real, gp0, 10.0).scalar() == 0.0);

    const Variable gp4 = Variable::constant(Tensor::scalar(4.0));
    CHECK(L::l_gan_d(real, real, gp4, 10.0).scalar() == doctest::Approx(40.0).epsilon(1e-12));

    CHECK_THROWS_AS(L::l_gan_d(real, Variable::constant(Tensor(Shape{3, 3}, 0.1)), gp0, 10.0),
                    ShapeError);
}

TEST_CASE("joint generator objective mixes by beta") {
    const Variable lae = Variable::constant(Tensor::scalar(0.6));
    const Variable lgg = Variable::constant(Tensor::scalar(-0.5));
    CHECK(L::l_g(lae, lgg, 0.05).scalar() == doctest::Approx(-0.445).epsilon(1e-12));
    CHECK(L::l_g(lae, lgg, 1.0).scalar() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(L::l_g(lae, lgg, 0.0).scalar() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(L::l_g(lae, lgg, 1.5), ArgumentError);
}

#include "orthojoin/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace orthojoin {

namespace {

Eigen::MatrixXd block_join(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c, const Eigen::MatrixXd& h) {
    Eigen::MatrixXd x(a.rows() + h.rows(), a.cols() + h.cols());
    x << a, c, c.transpose(), h;
    return x;
}

}  // namespace

JoinFixture cycles_fixture() {
    const double s2 = std::sqrt(2.0);
    const double lam = s2 - 1.0;
    auto alpha = [s2](double r) { return std::sqrt(5.0 + r / s2); };

    Eigen::MatrixXd a_g = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i < 7; ++i) a_g(i, i + 1) = a_g(i + 1, i) = 1.0;
    a_g(0, 7) = a_g(7, 0) = -1.0;
    a_g /= std::sqrt(2.0 + s2);

    Eigen::MatrixXd a_h(4, 4);
    a_h << 0, 1, 0, -1,
           1, 0, 1, 0,
           0, 1, 0, 1,
           -1, 0, 1, 0;
    a_h /= 2.0 + s2;

    Eigen::MatrixXd c(8, 4);
    c << 3 * s2, -1, 6 * s2, 3,
         -alpha(1), 3 * alpha(-7), -alpha(-1), 3 * alpha(7),
         -9, -s2, -3, -2 * s2,
         alpha(7), -3 * alpha(1), -alpha(-7), -3 * alpha(-1),
         6 * s2, 3, -3 * s2, 1,
         -alpha(-1), 3 * alpha(7), alpha(1), -3 * alpha(-7),
         -3, -2 * s2, 9, s2,
         -alpha(-7), -3 * alpha(-1), -alpha(7), 3 * alpha(1);
    c *= std::sqrt(lam) / 10.0;

    Eigen::MatrixXd x = block_join(a_g, c, -a_h);
    return {a_g, a_h, c, x, ZeroPattern::join(ZeroPattern::cycle(8), ZeroPattern::cycle(4))};
}

JoinFixture rank_two_fixture(int m, double lambda) {
    if (m < 1) throw std::invalid_argument("rank-two fixture needs m >= 1");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("rank-two fixture needs lambda in (0, 1]");

    Eigen::MatrixXd a(2, 2);
    Eigen::MatrixXd b(2, m);
    if (lambda == 1.0) {
        a << 4, 3, 3, -4;
        a /= 20.0;
        b.row(0).setOnes();
        b.row(1).setConstant(2.0);
        b *= std::sqrt(3.0) / (4.0 * std::sqrt(static_cast<double>(m)));
    } else {
        Eigen::Vector2d x(1.0, 2.0);
        x /= std::sqrt(5.0);
        const Eigen::VectorXd y = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
        a = (lambda - 1.0) * x * x.transpose();
        b = std::sqrt(lambda) * x * y.transpose();
    }
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd x = block_join(a, b, zero);
    return {a, zero, b, x, ZeroPattern::join_of_cliques(SizeTuple{2}, SizeTuple(std::vector<int>(static_cast<std::size_t>(m), 1)))};
}

}  // namespace orthojoin

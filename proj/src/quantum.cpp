#include "bellbox/quantum.hpp"

#include <cmath>

namespace bellbox {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return out;
}

void require_hermitian_psd(const Eigen::MatrixXcd& m, double tol, const char* what) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidPovm(std::string(what) + " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
    if (eig.eigenvalues().minCoeff() < -tol) {
        throw InvalidPovm(std::string(what) + " has negative eigenvalue " +
                          std::to_string(eig.eigenvalues().minCoeff()));
    }
}

}  // namespace

GeneralRealization GeneralRealization::from_pure(
    int local_dimension, const Eigen::VectorXcd& psi,
    std::vector<std::vector<std::vector<Eigen::MatrixXcd>>> effects) {
    GeneralRealization r;
    r.local_dimension = local_dimension;
    if (psi.size() != static_cast<Eigen::Index>(local_dimension) * local_dimension) {
        throw InvalidState("pure state has " + std::to_string(psi.size()) +
                           " amplitudes, expected " +
                           std::to_string(local_dimension * local_dimension));
    }
    r.rho = psi * psi.adjoint();
    r.effects = std::move(effects);
    validate(r);
    return r;
}

BellScenario GeneralRealization::scenario() const {
    if (effects.size() != 2 || effects[0].empty() || effects[0].front().empty()) {
        throw InvalidModel("realization needs effects for two parties");
    }
    return BellScenario(2, static_cast<int>(effects[0].size()),
                        static_cast<int>(effects[0].front().size()));
}

void validate(const GeneralRealization& r, double tol) {
    const int d = r.local_dimension;
    if (d < 1) throw InvalidState("local dimension must be positive");
    if (r.rho.rows() != d * d || r.rho.cols() != d * d) {
        throw DimensionMismatch("state is " + std::to_string(r.rho.rows()) + "x" +
                                std::to_string(r.rho.cols()) + ", expected " +
                                std::to_string(d * d) + " square");
    }
    if ((r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidState("state is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r.rho);
    if (eig.eigenvalues().minCoeff() < -tol) {
        throw InvalidState("state has negative eigenvalue " +
                           std::to_string(eig.eigenvalues().minCoeff()));
    }
    if (std::abs(r.rho.trace().real() - 1.0) > tol || std::abs(r.rho.trace().imag()) > tol) {
        throw InvalidState("state trace is not 1");
    }

    const BellScenario sc = r.scenario();
    for (const auto& party : r.effects) {
        if (static_cast<int>(party.size()) != sc.inputs) {
            throw InvalidModel("inconsistent input count across parties");
        }
        for (const auto& input : party) {
            if (static_cast<int>(input.size()) != sc.outputs) {
                throw InvalidModel("inconsistent output count across inputs");
            }
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
            for (const auto& e : input) {
                if (e.rows() != d || e.cols() != d) {
                    throw DimensionMismatch("effect is " + std::to_string(e.rows()) + "x" +
                                            std::to_string(e.cols()) + ", expected " +
                                            std::to_string(d) + " square");
                }
                require_hermitian_psd(e, tol, "effect");
                sum += e;
            }
            if ((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
                throw InvalidPovm("effects do not sum to the identity");
            }
        }
    }
}

ProbBox born_box(const GeneralRealization& r, double tol) {
    const BellScenario sc = r.scenario();
    std::vector<double> table;
    table.reserve(static_cast<std::size_t>(sc.table_size()));
    for (int x = 0; x < sc.inputs; ++x) {
        for (int y = 0; y < sc.inputs; ++y) {
            for (int a = 0; a < sc.outputs; ++a) {
                for (int b = 0; b < sc.outputs; ++b) {
                    const Eigen::MatrixXcd op = kron(r.effects[0][x][a], r.effects[1][y][b]);
                    table.push_back((r.rho * op).trace().real());
                }
            }
        }
    }
    return ProbBox::make(sc, std::move(table), tol);
}

GeneralRealization embed_qubit(const QubitRealization& r) {
    GeneralRealization out;
    out.local_dimension = 2;
    const Eigen::Vector4cd psi = r.state.vector();
    out.rho = psi * psi.adjoint();
    out.effects.assign(2, std::vector<std::vector<Eigen::MatrixXcd>>(
                              2, std::vector<Eigen::MatrixXcd>(2)));
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            out.effects[0][x][a] = r.alice(x).effect(a);
            out.effects[1][x][a] = r.bob(x).effect(a);
        }
    }
    return out;
}

void validate(const HybridRealization& r, double tol) {
    if (r.components.empty() || r.components.size() != r.weights.size()) {
        throw InvalidModel("hybrid needs one weight per component");
    }
    double sum = 0.0;
    for (double w : r.weights) {
        if (w < -tol) throw WeightError("negative weight " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw WeightError("weights sum to " + std::to_string(sum));
    const int d = r.components.front().local_dimension;
    const BellScenario sc = r.components.front().scenario();
    for (const auto& c : r.components) {
        if (c.local_dimension != d) {
            throw DimensionMismatch("hybrid components must share one local dimension");
        }
        if (!(c.scenario() == sc)) {
            throw ScenarioMismatch("hybrid components must share one scenario");
        }
        validate(c, tol);
    }
}

ProbBox hybrid_box(const HybridRealization& r) {
    validate(r);
    std::vector<ProbBox> boxes;
    boxes.reserve(r.components.size());
    for (const auto& c : r.components) boxes.push_back(born_box(c));
    return mix_boxes(boxes, r.weights);
}

GeneralRealization direct_sum(const HybridRealization& r) {
    validate(r);
    const int n_comp = static_cast<int>(r.components.size());
    const int d = r.components.front().local_dimension;
    const int big = d * n_comp;
    const BellScenario sc = r.components.front().scenario();

    GeneralRealization out;
    out.local_dimension = big;
    out.rho = Eigen::MatrixXcd::Zero(big * big, big * big);
    // Combined local index s*N + t: original level s major, flag t minor.
    auto loc = [&](int s, int t) { return s * n_comp + t; };
    for (int i = 0; i < n_comp; ++i) {
        const auto& rho_i = r.components[i].rho;
        for (int sa = 0; sa < d; ++sa)
            for (int sb = 0; sb < d; ++sb)
                for (int ta = 0; ta < d; ++ta)
                    for (int tb = 0; tb < d; ++tb) {
                        const int row = loc(sa, i) * big + loc(sb, i);
                        const int col = loc(ta, i) * big + loc(tb, i);
                        out.rho(row, col) += r.weights[i] * rho_i(sa * d + sb, ta * d + tb);
                    }
    }

    out.effects.assign(2, std::vector<std::vector<Eigen::MatrixXcd>>(
                              sc.inputs, std::vector<Eigen::MatrixXcd>(
                                             sc.outputs, Eigen::MatrixXcd::Zero(big, big))));
    for (int party = 0; party < 2; ++party)
        for (int x = 0; x < sc.inputs; ++x)
            for (int a = 0; a < sc.outputs; ++a)
                for (int i = 0; i < n_comp; ++i) {
                    const auto& e = r.components[i].effects[party][x][a];
                    for (int s = 0; s < d; ++s)
                        for (int t = 0; t < d; ++t)
                            out.effects[party][x][a](loc(s, i), loc(t, i)) = e(s, t);
                }
    validate(out);
    return out;
}

int effective_bipartite_dimension(const GeneralRealization& r, double tol) {
    const int d = r.local_dimension;
    int worst = 0;
    for (int party = 0; party < 2; ++party) {
        Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(d, d);
        for (int s = 0; s < d; ++s)
            for (int t = 0; t < d; ++t)
                for (int u = 0; u < d; ++u) {
                    const int row = party == 0 ? s * d + u : u * d + s;
                    const int col = party == 0 ? t * d + u : u * d + t;
                    reduced(s, t) += r.rho(row, col);
                }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(reduced);
        int rank = 0;
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
            if (eig.eigenvalues()(i) > tol) ++rank;
        }
        worst = std::max(worst, rank);
    }
    return worst;
}

}  // namespace bellbox

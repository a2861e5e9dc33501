#include "pns/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pns/norms.hpp"
#include "pns/operators.hpp"
#include "pns/random_field.hpp"

namespace pns {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFourPiSq = 4.0 * M_PI * M_PI;

double checked_pow(double base, double e) { return std::pow(base, e); }

// ---- weighted tuple norms on a (padded) collocation grid ----------------

double tuple_norm(const GridField& gf, const std::vector<double>& wgt, double s) {
    const std::size_t total = gf.grid.total();
    double acc = 0.0;
    for (std::size_t x = 0; x < total; ++x) {
        double m2 = 0.0;
        for (int c = 0; c < gf.ncomp; ++c) {
            double v = gf.comp[c][x];
            m2 += wgt[static_cast<std::size_t>(c)] * v * v;
        }
        acc += std::pow(m2, 0.5 * s);
    }
    return std::pow(acc / static_cast<double>(total), 1.0 / s);
}

double tuple_sup(const GridField& gf, const std::vector<double>& wgt, std::size_t* argmax) {
    const std::size_t total = gf.grid.total();
    double worst = -1.0;
    std::size_t xw = 0;
    for (std::size_t x = 0; x < total; ++x) {
        double m2 = 0.0;
        for (int c = 0; c < gf.ncomp; ++c) {
            double v = gf.comp[c][x];
            m2 += wgt[static_cast<std::size_t>(c)] * v * v;
        }
        if (m2 > worst) {
            worst = m2;
            xw = x;
        }
    }
    if (argmax) *argmax = xw;
    return std::sqrt(worst);
}

// W_c = m^{s-2} w_c (no weights; the pairing is over the full tensor).
GridField tuple_wbar(const GridField& gf, const std::vector<double>& wgt, double s) {
    GridField W(gf.grid, gf.ncomp);
    const std::size_t total = gf.grid.total();
    for (std::size_t x = 0; x < total; ++x) {
        double m2 = 0.0;
        for (int c = 0; c < gf.ncomp; ++c) {
            double v = gf.comp[c][x];
            m2 += wgt[static_cast<std::size_t>(c)] * v * v;
        }
        double f = m2 < std::numeric_limits<double>::min() ? 0.0 : std::pow(m2, 0.5 * (s - 2.0));
        for (int c = 0; c < gf.ncomp; ++c) W.comp[c][x] = f * gf.comp[c][x];
    }
    return W;
}

std::vector<double> unit_weights(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }

std::vector<double> sym_weights(int d) {
    std::vector<double> w;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) w.push_back(i == j ? 1.0 : 2.0);
    return w;
}

std::vector<double> sym_grad_weights(int d) {
    std::vector<double> w;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int l = 0; l < d; ++l) w.push_back(i == j ? 1.0 : 2.0);
    return w;
}

// ---- adjoints of the linear tuple maps, landing on the solenoidal band --

VectorField finish_gradient(VectorField g) {
    g.enforce_spectral_invariants();
    return project_solenoidal(g);
}

// tuple = v itself (d components)
VectorField adjoint_identity(const GridField& W, const TorusGrid& target) {
    VectorField g(target);
    for (int c = 0; c < target.dim; ++c)
        g.comp[c] = forward_truncated(W.grid, W.comp[c], target);
    return finish_gradient(std::move(g));
}

// tuple = grad v, component (i,j) at slot i*d+j
VectorField adjoint_grad(const GridField& W, const TorusGrid& target) {
    const int d = target.dim;
    std::vector<std::vector<cplx>> Wh(static_cast<std::size_t>(d) * d);
    for (int t = 0; t < d * d; ++t) Wh[static_cast<std::size_t>(t)] = forward_truncated(W.grid, W.comp[t], target);
    VectorField g(target);
    for (std::size_t idx = 0; idx < target.total(); ++idx) {
        auto md = target.mode(idx);
        if (md.nyquist) continue;
        for (int i = 0; i < d; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = 0; j < d; ++j)
                acc += cplx(0.0, -kTwoPi * md.k[j]) * Wh[static_cast<std::size_t>(i * d + j)][idx];
            g.comp[i][idx] = acc;
        }
    }
    return finish_gradient(std::move(g));
}

// tuple = D v in symmetric storage; pairing over the full tensor
VectorField adjoint_sym(const GridField& W, const TorusGrid& target) {
    const int d = target.dim;
    const int nsym = SymTensorField::ncomp(d);
    std::vector<std::vector<cplx>> Wh(static_cast<std::size_t>(nsym));
    for (int t = 0; t < nsym; ++t) Wh[static_cast<std::size_t>(t)] = forward_truncated(W.grid, W.comp[t], target);
    VectorField g(target);
    for (std::size_t idx = 0; idx < target.total(); ++idx) {
        auto md = target.mode(idx);
        if (md.nyquist) continue;
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) {
                const cplx w = Wh[static_cast<std::size_t>(SymTensorField::index(a, b, d))][idx];
                g.comp[a][idx] += cplx(0.0, -kTwoPi * md.k[b]) * w;
                if (a != b) g.comp[b][idx] += cplx(0.0, -kTwoPi * md.k[a]) * w;
            }
    }
    return finish_gradient(std::move(g));
}

// tuple = grad D v in symmetric storage, slot sym(i,j)*d + l
VectorField adjoint_sym_grad(const GridField& W, const TorusGrid& target) {
    const int d = target.dim;
    const int nsym = SymTensorField::ncomp(d);
    std::vector<std::vector<cplx>> Wh(static_cast<std::size_t>(nsym) * d);
    for (int t = 0; t < nsym * d; ++t) Wh[static_cast<std::size_t>(t)] = forward_truncated(W.grid, W.comp[t], target);
    VectorField g(target);
    for (std::size_t idx = 0; idx < target.total(); ++idx) {
        auto md = target.mode(idx);
        if (md.nyquist) continue;
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b)
                for (int l = 0; l < d; ++l) {
                    const cplx w = Wh[static_cast<std::size_t>(SymTensorField::index(a, b, d) * d + l)][idx];
                    g.comp[a][idx] += -kFourPiSq * md.k[b] * md.k[l] * w;
                    if (a != b) g.comp[b][idx] += -kFourPiSq * md.k[a] * md.k[l] * w;
                }
    }
    return finish_gradient(std::move(g));
}

// ---- shared per-field evaluation ----------------------------------------

struct FieldPieces {
    GridField vg;   // d comps
    GridField gv;   // d*d comps
    GridField dv;   // sym comps (from gv)
    GridField g2;   // nsym*d comps
    VectorField adv_proj; // P(v . grad v), spectral
};

GridField sym_from_grad(const GridField& gv, int d) {
    GridField out(gv.grid, SymTensorField::ncomp(d));
    const std::size_t total = gv.grid.total();
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            auto& dst = out.comp[SymTensorField::index(i, j, d)];
            const auto& a = gv.comp[i * d + j];
            const auto& b = gv.comp[j * d + i];
            for (std::size_t x = 0; x < total; ++x) dst[x] = 0.5 * (a[x] + b[x]);
        }
    return out;
}

GridField advection_samples(const GridField& vg, const GridField& gv, int d) {
    GridField adv(vg.grid, d);
    const std::size_t total = vg.grid.total();
    for (int i = 0; i < d; ++i) {
        auto& dst = adv.comp[i];
        for (std::size_t x = 0; x < total; ++x) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += vg.comp[j][x] * gv.comp[i * d + j][x];
            dst[x] = s;
        }
    }
    return adv;
}

FieldPieces make_pieces(const VectorField& v, bool want_adv, bool want_g2) {
    FieldPieces fp;
    fp.vg = to_grid_padded(v, 2);
    fp.gv = gradient(v, 2);
    fp.dv = sym_from_grad(fp.gv, v.dim());
    if (want_g2) fp.g2 = second_gradient(v, 2);
    if (want_adv) {
        GridField adv = advection_samples(fp.vg, fp.gv, v.dim());
        fp.adv_proj = project_solenoidal(from_grid_truncated(adv, v.grid));
    }
    return fp;
}

double hminus1_norm_sq(const VectorField& h) {
    double q = 0.0;
    for (std::size_t idx = 0; idx < h.grid.total(); ++idx) {
        auto md = h.grid.mode(idx);
        if (md.nyquist || md.k2 == 0) continue;
        double w = 1.0 / (kFourPiSq * static_cast<double>(md.k2));
        for (int c = 0; c < h.grid.dim; ++c) q += w * std::norm(h.comp[c][idx]);
    }
    return q;
}

// value of every role quotient from one shared evaluation
void role_values(const VectorField& v, double p, SobolevTable& out) {
    const int d = v.dim();
    const double q = 4.0 / (4.0 - p);
    const double alpha = (3.0 * p - 4.0) / (3.0 * p - 2.0);
    FieldPieces fp = make_pieces(v, true, true);

    const auto w1 = unit_weights(d);
    const auto wg = unit_weights(d * d);
    const auto ws = sym_weights(d);
    const auto wsg = sym_grad_weights(d);

    double n_grad3 = tuple_norm(fp.gv, wg, 3.0);
    double n_grad2 = tuple_norm(fp.gv, wg, 2.0);
    double n_gradq = tuple_norm(fp.gv, wg, q);
    double n_g2q = tuple_norm(fp.g2, wsg, q);
    double n_vq = tuple_norm(fp.vg, w1, q);
    double n_v2 = tuple_norm(fp.vg, w1, 2.0);
    double n_dvp = tuple_norm(fp.dv, ws, p);
    double n_sup = tuple_sup(fp.vg, w1, nullptr);
    double n_adv = std::sqrt(hminus1_norm_sq(fp.adv_proj));

    out.interpolation = n_grad3 / (checked_pow(n_grad2, alpha) * checked_pow(n_g2q, 1.0 - alpha));
    out.grad_l2 = (n_grad2 / n_g2q) * (n_grad2 / n_g2q);
    out.sup_norm = (n_sup / n_g2q) * (n_sup / n_g2q);
    out.lemma2_embedding = n_vq / n_dvp;
    out.advection = n_adv / (n_gradq * n_gradq);
    out.extinction = checked_pow(n_v2 / n_dvp, p);
}

// ---- log-quotient with gradient, per role --------------------------------

struct LogEval {
    double value = 0.0;
    VectorField grad;
};

// log || tuple ||_s and its gradient; kind selects the adjoint
enum class TupleKind { identity, grad, sym, sym_grad };

LogEval log_tuple_norm(const VectorField& v, const GridField& samples, TupleKind kind,
                       const std::vector<double>& wgt, double s, bool want_grad) {
    LogEval out;
    double norm = tuple_norm(samples, wgt, s);
    out.value = std::log(norm);
    if (!want_grad) return out;
    GridField W = tuple_wbar(samples, wgt, s);
    VectorField g;
    switch (kind) {
        case TupleKind::identity: g = adjoint_identity(W, v.grid); break;
        case TupleKind::grad: g = adjoint_grad(W, v.grid); break;
        case TupleKind::sym: g = adjoint_sym(W, v.grid); break;
        case TupleKind::sym_grad: g = adjoint_sym_grad(W, v.grid); break;
    }
    double Js = checked_pow(norm, s);
    out.grad = (1.0 / Js) * g;
    return out;
}

LogEval log_sup(const VectorField& v, const GridField& vg, bool want_grad) {
    LogEval out;
    std::size_t xstar = 0;
    double sup = tuple_sup(vg, unit_weights(vg.ncomp), &xstar);
    out.value = std::log(sup);
    if (!want_grad) return out;
    // subgradient: point evaluation at the argmax
    const TorusGrid& gp = vg.grid;
    auto m = gp.unflatten(xstar);
    VectorField g(v.grid);
    for (std::size_t idx = 0; idx < v.grid.total(); ++idx) {
        auto md = v.grid.mode(idx);
        if (md.nyquist) continue;
        double phase = 0.0;
        for (int ax = 0; ax < v.grid.dim; ++ax)
            phase += static_cast<double>(md.k[ax]) * m[ax] / gp.n;
        cplx e = std::polar(1.0, -kTwoPi * phase);
        for (int c = 0; c < v.grid.dim; ++c)
            g.comp[c][idx] = vg.comp[c][xstar] * e / (sup * sup);
    }
    return {out.value, finish_gradient(std::move(g))};
}

LogEval log_adv_hminus(const VectorField& v, const FieldPieces& fp, bool want_grad) {
    LogEval out;
    double Q = hminus1_norm_sq(fp.adv_proj);
    out.value = 0.5 * std::log(Q);
    if (!want_grad) return out;
    VectorField w(v.grid);
    for (std::size_t idx = 0; idx < v.grid.total(); ++idx) {
        auto md = v.grid.mode(idx);
        if (md.nyquist || md.k2 == 0) continue;
        double f = 1.0 / (kFourPiSq * static_cast<double>(md.k2));
        for (int c = 0; c < v.grid.dim; ++c) w.comp[c][idx] = f * fp.adv_proj.comp[c][idx];
    }
    const int d = v.dim();
    GridField wg = to_grid_padded(w, 2);
    GridField gw = gradient(w, 2);
    GridField G(fp.vg.grid, d);
    const std::size_t total = fp.vg.grid.total();
    for (int j = 0; j < d; ++j) {
        auto& dst = G.comp[j];
        for (std::size_t x = 0; x < total; ++x) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += wg.comp[i][x] * fp.gv.comp[i * d + j][x]; // w . (grad u)^T
            dst[x] = s;
        }
    }
    for (int i = 0; i < d; ++i) {
        auto& dst = G.comp[i];
        for (std::size_t x = 0; x < total; ++x) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += fp.vg.comp[j][x] * gw.comp[i * d + j][x];
            dst[x] -= s;
        }
    }
    VectorField g = adjoint_identity(G, v.grid);
    out.grad = (1.0 / Q) * g;
    return out;
}

LogEval eval_role_log(SobolevRole role, const VectorField& v, double p, bool want_grad) {
    const double q = 4.0 / (4.0 - p);
    const double alpha = (3.0 * p - 4.0) / (3.0 * p - 2.0);
    const int d = v.dim();
    const auto w1 = unit_weights(d);
    const auto wg = unit_weights(d * d);
    const auto ws = sym_weights(d);
    const auto wsg = sym_grad_weights(d);

    auto combine = [&](std::initializer_list<std::pair<LogEval*, double>> terms) {
        LogEval out;
        out.value = 0.0;
        if (want_grad) out.grad = VectorField(v.grid);
        for (auto& [ev, c] : terms) {
            out.value += c * ev->value;
            if (want_grad) axpy(out.grad, c, ev->grad);
        }
        return out;
    };

    switch (role) {
        case SobolevRole::interpolation: {
            FieldPieces fp = make_pieces(v, false, true);
            LogEval a = log_tuple_norm(v, fp.gv, TupleKind::grad, wg, 3.0, want_grad);
            LogEval b = log_tuple_norm(v, fp.gv, TupleKind::grad, wg, 2.0, want_grad);
            LogEval c = log_tuple_norm(v, fp.g2, TupleKind::sym_grad, wsg, q, want_grad);
            return combine({{&a, 1.0}, {&b, -alpha}, {&c, -(1.0 - alpha)}});
        }
        case SobolevRole::grad_l2: {
            FieldPieces fp = make_pieces(v, false, true);
            LogEval a = log_tuple_norm(v, fp.gv, TupleKind::grad, wg, 2.0, want_grad);
            LogEval c = log_tuple_norm(v, fp.g2, TupleKind::sym_grad, wsg, q, want_grad);
            return combine({{&a, 1.0}, {&c, -1.0}});
        }
        case SobolevRole::sup_norm: {
            FieldPieces fp = make_pieces(v, false, true);
            LogEval a = log_sup(v, fp.vg, want_grad);
            LogEval c = log_tuple_norm(v, fp.g2, TupleKind::sym_grad, wsg, q, want_grad);
            return combine({{&a, 1.0}, {&c, -1.0}});
        }
        case SobolevRole::lemma2_embedding: {
            FieldPieces fp = make_pieces(v, false, false);
            LogEval a = log_tuple_norm(v, fp.vg, TupleKind::identity, w1, q, want_grad);
            LogEval c = log_tuple_norm(v, fp.dv, TupleKind::sym, ws, p, want_grad);
            return combine({{&a, 1.0}, {&c, -1.0}});
        }
        case SobolevRole::advection: {
            FieldPieces fp = make_pieces(v, true, false);
            LogEval a = log_adv_hminus(v, fp, want_grad);
            LogEval c = log_tuple_norm(v, fp.gv, TupleKind::grad, wg, q, want_grad);
            return combine({{&a, 1.0}, {&c, -2.0}});
        }
        case SobolevRole::extinction: {
            FieldPieces fp = make_pieces(v, false, false);
            LogEval a = log_tuple_norm(v, fp.vg, TupleKind::identity, w1, 2.0, want_grad);
            LogEval c = log_tuple_norm(v, fp.dv, TupleKind::sym, ws, p, want_grad);
            return combine({{&a, 1.0}, {&c, -1.0}});
        }
    }
    throw ArgumentError("eval_role_log: unknown role");
}

double stored_from_log(SobolevRole role, double logF, double p) {
    switch (role) {
        case SobolevRole::grad_l2:
        case SobolevRole::sup_norm: return std::exp(2.0 * logF);
        case SobolevRole::extinction: return std::exp(p * logF);
        default: return std::exp(logF);
    }
}

VectorField normalize_l2(VectorField v) {
    double n = v.l2_norm();
    if (n <= 0.0) throw ArgumentError("normalize_l2: zero field");
    for (auto& c : v.comp)
        for (auto& z : c) z /= n;
    return v;
}

double ascend(SobolevRole role, VectorField& v, double p, int iters) {
    double f = eval_role_log(role, v, p, false).value;
    double eta = 0.1;
    for (int it = 0; it < iters; ++it) {
        LogEval ev = eval_role_log(role, v, p, true);
        double gn = ev.grad.l2_norm();
        if (!(gn > 0.0) || !std::isfinite(gn)) break;
        VectorField trial = v;
        axpy(trial, eta * v.l2_norm() / gn, ev.grad);
        trial = normalize_l2(project_solenoidal(trial));
        double ft = eval_role_log(role, trial, p, false).value;
        if (std::isfinite(ft) && ft > f) {
            v = std::move(trial);
            f = ft;
            eta = std::min(eta * 1.2, 0.5);
        } else {
            eta *= 0.5;
            if (eta < 1e-7) break;
        }
    }
    return f;
}

} // namespace

double korn_constant(int dim) {
    if (dim != 2 && dim != 3) throw ArgumentError("korn_constant: dim must be 2 or 3");
    return std::sqrt(2.0);
}

SobolevRole sobolev_role_from_string(const std::string& name) {
    if (name == "interpolation") return SobolevRole::interpolation;
    if (name == "grad_l2") return SobolevRole::grad_l2;
    if (name == "sup_norm") return SobolevRole::sup_norm;
    if (name == "lemma2_embedding") return SobolevRole::lemma2_embedding;
    if (name == "advection") return SobolevRole::advection;
    if (name == "extinction") return SobolevRole::extinction;
    throw ArgumentError("unknown Sobolev role: " + name);
}

std::string to_string(SobolevRole role) {
    switch (role) {
        case SobolevRole::interpolation: return "interpolation";
        case SobolevRole::grad_l2: return "grad_l2";
        case SobolevRole::sup_norm: return "sup_norm";
        case SobolevRole::lemma2_embedding: return "lemma2_embedding";
        case SobolevRole::advection: return "advection";
        case SobolevRole::extinction: return "extinction";
    }
    throw ArgumentError("unknown Sobolev role");
}

double SobolevTable::get(SobolevRole role) const {
    switch (role) {
        case SobolevRole::interpolation: return interpolation;
        case SobolevRole::grad_l2: return grad_l2;
        case SobolevRole::sup_norm: return sup_norm;
        case SobolevRole::lemma2_embedding: return lemma2_embedding;
        case SobolevRole::advection: return advection;
        case SobolevRole::extinction: return extinction;
    }
    throw ArgumentError("unknown Sobolev role");
}

double sobolev_quotient(SobolevRole role, const VectorField& v, double p) {
    if (v.l2_norm() <= 0.0) throw ArgumentError("sobolev_quotient: zero field excluded");
    return stored_from_log(role, eval_role_log(role, v, p, false).value, p);
}

SobolevTable estimate_all_roles(const TorusGrid& grid, double p, std::uint64_t seed,
                                const EstimatorOptions& opts) {
    if (!(p > 4.0 / 3.0 && p <= 2.0))
        throw ArgumentError("estimate_all_roles: p outside supported range");
    const double decays[] = {1.5, 2.0, 2.5, 3.0, 3.5};

    SobolevTable best{};
    std::array<VectorField, 6> argbest;
    SobolevTable vals{};
    for (int i = 0; i < opts.samples; ++i) {
        VectorField v = random_solenoidal(grid, seed + static_cast<std::uint64_t>(i),
                                          decays[i % 5], 1.0);
        role_values(v, p, vals);
        auto track = [&](double val, double& cur, int slot) {
            if (val > cur) {
                cur = val;
                argbest[static_cast<std::size_t>(slot)] = v;
            }
        };
        track(vals.interpolation, best.interpolation, 0);
        track(vals.grad_l2, best.grad_l2, 1);
        track(vals.sup_norm, best.sup_norm, 2);
        track(vals.lemma2_embedding, best.lemma2_embedding, 3);
        track(vals.advection, best.advection, 4);
        track(vals.extinction, best.extinction, 5);
    }

    const SobolevRole all[] = {SobolevRole::interpolation,  SobolevRole::grad_l2,
                               SobolevRole::sup_norm,       SobolevRole::lemma2_embedding,
                               SobolevRole::advection,      SobolevRole::extinction};
    SobolevTable out{};
    double* slots[] = {&out.interpolation, &out.grad_l2,   &out.sup_norm,
                       &out.lemma2_embedding, &out.advection, &out.extinction};
    for (int r = 0; r < 6; ++r) {
        VectorField v = normalize_l2(argbest[static_cast<std::size_t>(r)]);
        double logf = ascend(all[r], v, p, opts.ascent_iters);
        *slots[r] = opts.safety * stored_from_log(all[r], logf, p);
    }
    return out;
}

double estimate_sobolev_constant(const TorusGrid& grid, double p, SobolevRole role,
                                 std::uint64_t seed, const EstimatorOptions& opts) {
    return estimate_all_roles(grid, p, seed, opts).get(role);
}

LambdaResult lambda_threshold(double p, double C_S, double C_K) {
    if (!(p > 1.0 && p < 2.0)) throw ArgumentError("lambda_threshold: need p in (1,2)");
    if (!(C_S > 0.0) || !(C_K > 0.0))
        throw ArgumentError("lambda_threshold: constants must be positive");
    const double e = 2.0 / (3.0 - p);
    LambdaResult out;
    out.branches[0] = std::pow(p / (8.0 * C_S), e);
    out.branches[1] = std::pow(std::pow(3.0, 0.5 * (2.0 - p)) * C_S * C_K / 2.0, -e);
    out.branches[2] = std::pow((p - 1.0) * std::pow(3.0, 0.5 * (p - 2.0)) / (C_S * C_K), e);
    out.active_branch = 1;
    double m = out.branches[0];
    for (int i = 1; i < 3; ++i)
        if (out.branches[static_cast<std::size_t>(i)] < m) {
            m = out.branches[static_cast<std::size_t>(i)];
            out.active_branch = i + 1;
        }
    out.lambda = 0.99 * m;
    return out;
}

double force_bound(double p, double lambda, double C_S) {
    if (!(p > 1.0 && p < 2.0) || !(lambda > 0.0) || !(C_S > 0.0))
        throw ArgumentError("force_bound: invalid arguments");
    return std::sqrt(p * (p - 1.0) * std::pow(lambda, p - 1.0) /
                     (8.0 * std::pow(2.0, 2.0 - p) * C_S));
}

ContractionRate contraction_rate(double p, double lambda, double mu, double C_S, double C_K) {
    if (!(lambda > 0.0) || !(C_S > 0.0) || !(C_K > 0.0) || mu < 0.0)
        throw ArgumentError("contraction_rate: invalid arguments");
    const double den = std::pow(mu + 2.0 * lambda, 0.5 * (2.0 - p));
    ContractionRate out;
    out.r = (std::pow(3.0, 0.5 * (p - 2.0)) * C_K - C_S * std::sqrt(lambda) * den) / (2.0 * den);
    out.positive = out.r > 0.0;
    return out;
}

ExtinctionBounds extinction_bound(double p, double C_S, double lambda, double t_f,
                                  std::optional<double> v0_l2) {
    if (!(p < 2.0)) throw ArgumentError("extinction_bound: no finite-time extinction at p = 2");
    if (!(p > 1.0) || !(C_S > 0.0) || !(lambda > 0.0) || t_f < 0.0)
        throw ArgumentError("extinction_bound: invalid arguments");
    ExtinctionBounds out;
    out.statement = t_f + std::pow(C_S, 3.0 - p) * std::pow(lambda, 2.0 - p) / (2.0 - p);
    if (v0_l2) {
        if (*v0_l2 < 0.0) throw ArgumentError("extinction_bound: negative norm");
        out.proof = t_f + C_S * std::pow(*v0_l2, 2.0 - p) / (2.0 - p);
    }
    return out;
}

ReverseHolderSides reverse_holder_check(const GridField& f, const GridField& g, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ArgumentError("reverse_holder_check: need 0 < q < 1");
    if (!(f.grid == g.grid)) throw ArgumentError("reverse_holder_check: grids differ");
    const double qp = q / (q - 1.0);
    const std::size_t total = f.grid.total();
    auto mag = [](const GridField& gf, std::size_t x) {
        double m2 = 0.0;
        for (int c = 0; c < gf.ncomp; ++c) m2 += gf.comp[c][x] * gf.comp[c][x];
        return std::sqrt(m2);
    };
    double ifg = 0.0, ifq = 0.0, igqp = 0.0, gmax = 0.0;
    for (std::size_t x = 0; x < total; ++x) {
        double fa = mag(f, x), ga = mag(g, x);
        gmax = std::max(gmax, ga);
        ifg += fa * ga;
        ifq += std::pow(fa, q);
        igqp += std::pow(ga, qp); // qp < 0: infinite if g vanishes somewhere
    }
    if (gmax <= 0.0) throw ArgumentError("reverse_holder_check: g is identically zero");
    const double inv = 1.0 / static_cast<double>(total);
    ReverseHolderSides out;
    out.lhs = ifg * inv;
    out.rhs = std::pow(ifq * inv, 1.0 / q) * std::pow(igqp * inv, 1.0 / qp);
    return out;
}

SmallnessBudget compute_budget(const TorusGrid& grid, double p, double mu, std::uint64_t seed,
                               const EstimatorOptions& opts) {
    SmallnessBudget b;
    b.p = p;
    b.mu = mu;
    b.seed = seed;
    b.grid_dim = grid.dim;
    b.grid_n = grid.n;
    b.samples = opts.samples;
    b.roles = estimate_all_roles(grid, p, seed, opts);
    b.C_K = korn_constant(grid.dim);
    // reduce every role to the constant of a 1-homogeneous inequality and
    // take the max; conservative scalar entering the threshold formulas
    b.C_S = std::max({b.roles.interpolation, std::sqrt(b.roles.grad_l2),
                      std::sqrt(b.roles.sup_norm), b.roles.lemma2_embedding, b.roles.advection,
                      std::pow(b.roles.extinction, 1.0 / p)});
    LambdaResult lr = lambda_threshold(p, b.C_S, b.C_K);
    b.branches = lr.branches;
    b.active_branch = lr.active_branch;
    b.lambda = lr.lambda;
    b.K = force_bound(p, b.lambda, b.C_S);
    b.A = std::pow(b.C_S, (12.0 * p - 11.0) / (3.0 * p - 2.0));
    // the period-map estimate uses the advection trilinear constant
    b.rate = contraction_rate(p, b.lambda, mu, b.roles.advection, b.C_K);
    b.extinction_statement_duration =
        std::pow(b.roles.extinction, 3.0 - p) * std::pow(b.lambda, 2.0 - p) / (2.0 - p);
    return b;
}

nlohmann::json budget_to_json(const SmallnessBudget& b) {
    return nlohmann::json{
        {"p", b.p},
        {"mu", b.mu},
        {"C_S_by_role",
         {{"interpolation", b.roles.interpolation},
          {"grad_l2", b.roles.grad_l2},
          {"sup_norm", b.roles.sup_norm},
          {"lemma2_embedding", b.roles.lemma2_embedding},
          {"advection", b.roles.advection},
          {"extinction", b.roles.extinction}}},
        {"C_K", b.C_K},
        {"C_S", b.C_S},
        {"Lambda", b.lambda},
        {"branches", b.branches},
        {"active_branch", b.active_branch},
        {"K", b.K},
        {"A", b.A},
        {"contraction_rate", {{"r", b.rate.r}, {"positive", b.rate.positive}}},
        {"extinction_bounds", {{"statement_duration", b.extinction_statement_duration}}},
        {"provenance",
         {{"seed", b.seed}, {"grid_dim", b.grid_dim}, {"grid_n", b.grid_n}, {"samples", b.samples}}}};
}

SmallnessBudget budget_from_json(const nlohmann::json& j) {
    SmallnessBudget b;
    b.p = j.at("p").get<double>();
    b.mu = j.at("mu").get<double>();
    const auto& r = j.at("C_S_by_role");
    b.roles.interpolation = r.at("interpolation").get<double>();
    b.roles.grad_l2 = r.at("grad_l2").get<double>();
    b.roles.sup_norm = r.at("sup_norm").get<double>();
    b.roles.lemma2_embedding = r.at("lemma2_embedding").get<double>();
    b.roles.advection = r.at("advection").get<double>();
    b.roles.extinction = r.at("extinction").get<double>();
    b.C_K = j.at("C_K").get<double>();
    b.C_S = j.at("C_S").get<double>();
    b.lambda = j.at("Lambda").get<double>();
    b.branches = j.at("branches").get<std::array<double, 3>>();
    b.active_branch = j.at("active_branch").get<int>();
    b.K = j.at("K").get<double>();
    b.A = j.at("A").get<double>();
    b.rate.r = j.at("contraction_rate").at("r").get<double>();
    b.rate.positive = j.at("contraction_rate").at("positive").get<bool>();
    b.extinction_statement_duration =
        j.at("extinction_bounds").at("statement_duration").get<double>();
    if (j.contains("provenance")) {
        b.seed = j.at("provenance").at("seed").get<std::uint64_t>();
        b.grid_dim = j.at("provenance").at("grid_dim").get<int>();
        b.grid_n = j.at("provenance").at("grid_n").get<int>();
        b.samples = j.at("provenance").at("samples").get<int>();
    }
    return b;
}

} // namespace pns

#include "cylg/potential.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "cylg/linalg.hpp"
#include "cylg/statespace.hpp"

namespace cylg {

namespace {

// x^a y^b z^c w^d with rational coefficient
struct XTerm {
    int a, b, c, d;
    Rat coef;
};

XyzwPoly xp(std::initializer_list<XTerm> ts) {
    XyzwPoly p(4);
    for (const auto& t : ts) p.add({t.a, t.b, t.c, t.d}, t.coef);
    return p;
}

ExpVec tmono(std::initializer_list<int> vars) {
    ExpVec e(9, 0);
    for (int v : vars) ++e[static_cast<size_t>(v)];
    return e;
}

void put(LayeredPotential& f, const XyzwPoly& c, std::initializer_list<int> vars,
         const Rat& mult = Rat(1)) {
    f.add(tmono(vars), mult == 1 ? c : c.scale(mult));
}

LayeredPotential make_f0_data() {
    LayeredPotential f(9);

    // degree-8 block
    XyzwPoly c1 = xp({{6, 0, 0, 0, rat(-1, 4128768)},
                      {4, 2, 0, 0, rat(5, 4128768)},
                      {2, 4, 0, 0, rat(5, 4128768)},
                      {0, 6, 0, 0, rat(-1, 4128768)}});
    put(f, c1, {3, 3, 3, 3, 3, 3, 3, 3});
    put(f, c1, {6, 6, 6, 6, 6, 6, 6, 6});

    XyzwPoly c2 = xp({{5, 1, 0, 0, rat(1, 294912)},
                      {3, 3, 0, 0, rat(14, 294912)},
                      {1, 5, 0, 0, rat(1, 294912)}});
    put(f, c2, {3, 3, 3, 3, 3, 3, 6, 6});
    put(f, c2, {3, 3, 6, 6, 6, 6, 6, 6});

    XyzwPoly c3 = xp({{4, 0, 1, 0, rat(8, 294912)},
                      {0, 4, 1, 0, rat(8, 294912)},
                      {0, 0, 5, 0, rat(19, 294912)}});
    put(f, c3, {3, 3, 3, 6, 6, 6, 7});

    // degree-7 block
    XyzwPoly c4 = xp({{5, 0, 0, 0, rat(1, 73728)},
                      {3, 2, 0, 0, rat(2, 73728)},
                      {1, 4, 0, 0, rat(1, 73728)}});
    put(f, c4, {2, 3, 3, 3, 3, 3, 3});
    put(f, c4, {5, 6, 6, 6, 6, 6, 6});

    XyzwPoly c5 = xp({{4, 1, 0, 0, rat(1, 73728)},
                      {2, 3, 0, 0, rat(2, 73728)},
                      {0, 5, 0, 0, rat(1, 73728)}});
    put(f, c5, {3, 3, 3, 3, 3, 3, 5});
    put(f, c5, {2, 6, 6, 6, 6, 6, 6});

    XyzwPoly c6 = xp({{4, 2, 0, 0, rat(5, 73728)}, {2, 4, 0, 0, rat(5, 73728)}});
    put(f, c6, {3, 3, 3, 3, 6, 6, 6, 6});

    XyzwPoly c7 = xp({{4, 0, 0, 0, rat(-1, 30720)},
                      {2, 2, 0, 0, rat(6, 30720)},
                      {0, 4, 0, 0, rat(-1, 30720)}});
    put(f, c7, {1, 3, 3, 3, 3, 3});
    put(f, c7, {4, 6, 6, 6, 6, 6});

    XyzwPoly c8 = xp({{4, 0, 0, 0, rat(-1, 3072)}, {2, 2, 0, 0, rat(3, 3072)}});
    put(f, c8, {2, 2, 3, 3, 3, 3});
    put(f, c8, {5, 5, 6, 6, 6, 6});

    XyzwPoly c9 = xp({{2, 2, 0, 0, rat(3, 3072)}, {0, 4, 0, 0, rat(-1, 3072)}});
    put(f, c9, {3, 3, 3, 3, 5, 5});
    put(f, c9, {2, 2, 6, 6, 6, 6});

    XyzwPoly c10 = xp({{3, 1, 1, 0, rat(1, 6144)}, {1, 3, 1, 0, rat(1, 6144)}});
    put(f, c10, {3, 3, 3, 3, 3, 6, 7});
    put(f, c10, {3, 6, 6, 6, 6, 6, 7});

    XyzwPoly c11 = xp({{4, 1, 0, 0, rat(1, 6144)}, {2, 3, 0, 0, rat(4, 6144)}});
    put(f, c11, {2, 3, 3, 3, 3, 6, 6});
    put(f, c11, {3, 3, 5, 6, 6, 6, 6});

    XyzwPoly c12 = xp({{3, 2, 0, 0, rat(4, 6144)}, {1, 4, 0, 0, rat(1, 6144)}});
    put(f, c12, {3, 3, 3, 3, 5, 6, 6});
    put(f, c12, {2, 3, 3, 6, 6, 6, 6});

    XyzwPoly c13 = xp({{3, 1, 0, 0, rat(1, 1536)}, {1, 3, 0, 0, rat(1, 1536)}});
    put(f, c13, {1, 3, 3, 3, 6, 6});
    put(f, c13, {3, 3, 4, 6, 6, 6});
    put(f, c13, {2, 3, 3, 3, 3, 5});
    put(f, c13, {2, 5, 6, 6, 6, 6});

    XyzwPoly c14 = xp({{2, 2, 0, 0, rat(1, 1536)}});
    put(f, c14, {3, 3, 3, 3, 4, 6});
    put(f, c14, {1, 3, 6, 6, 6, 6});

    XyzwPoly c15 = xp({{3, 0, 1, 0, rat(1, 1536)}, {1, 2, 1, 0, rat(7, 1536)}});
    put(f, c15, {3, 3, 3, 5, 6, 7});
    put(f, c15, {2, 3, 6, 6, 6, 7});

    XyzwPoly c16 = xp({{2, 1, 1, 0, rat(7, 1536)}, {0, 3, 1, 0, rat(1, 1536)}});
    put(f, c16, {2, 3, 3, 3, 6, 7});
    put(f, c16, {3, 5, 6, 6, 6, 7});

    XyzwPoly c17 = xp({{3, 1, 0, 0, rat(1, 512)}, {1, 3, 0, 0, rat(1, 512)}});
    put(f, c17, {2, 2, 3, 3, 6, 6});
    put(f, c17, {3, 3, 5, 5, 6, 6});

    XyzwPoly c18 = xp({{2, 2, 0, 0, rat(1, 384)}});
    put(f, c18, {3, 3, 3, 3, 7, 7});
    put(f, c18, {6, 6, 6, 6, 7, 7});

    // degree-5 block
    XyzwPoly c19 = xp({{3, 0, 0, 0, rat(1, 384)}, {1, 2, 0, 0, rat(1, 384)}});
    put(f, c19, {1, 2, 3, 3, 3});
    put(f, c19, {4, 5, 6, 6, 6});

    XyzwPoly c20 = xp({{2, 1, 0, 0, rat(1, 384)}, {0, 3, 0, 0, rat(1, 384)}});
    put(f, c20, {1, 3, 3, 3, 5});
    put(f, c20, {2, 4, 6, 6, 6});

    XyzwPoly c21 = xp({{2, 0, 1, 0, rat(1, 384)}, {0, 2, 1, 0, rat(1, 384)}});
    put(f, c21, {3, 3, 3, 4, 7});
    put(f, c21, {1, 6, 6, 6, 7});

    XyzwPoly c22 = xp({{3, 0, 0, 0, rat(1, 384)}});
    put(f, c22, {2, 2, 2, 3, 3});
    put(f, c22, {5, 5, 5, 6, 6});

    XyzwPoly c23 = xp({{0, 3, 0, 0, rat(1, 384)}});
    put(f, c23, {3, 3, 5, 5, 5});
    put(f, c23, {2, 2, 2, 6, 6});

    XyzwPoly c24 = xp({{2, 0, 0, 0, rat(1, 384)},
                       {0, 2, 0, 0, rat(-2, 384)},
                       {0, 0, 0, 1, rat(-3, 384)}});
    put(f, c24, {2, 2, 2, 2});
    put(f, c24, {5, 5, 5, 5});

    XyzwPoly c25 = xp({{1, 2, 0, 0, rat(1, 128)}});
    put(f, c25, {2, 3, 3, 5, 5});
    put(f, c25, {2, 2, 5, 6, 6});

    XyzwPoly c26 = xp({{2, 1, 0, 0, rat(1, 128)}});
    put(f, c26, {2, 2, 3, 3, 5});
    put(f, c26, {2, 5, 5, 6, 6});

    XyzwPoly c27 = xp({{2, 2, 0, 0, rat(1, 128)}});
    put(f, c27, {2, 3, 3, 5, 6, 6});

    XyzwPoly c28 = xp({{3, 1, 0, 0, rat(1, 128)}, {1, 3, 0, 0, rat(1, 128)}});
    put(f, c28, {3, 3, 6, 6, 7, 7});

    XyzwPoly c29 = xp({{2, 0, 0, 0, rat(2, 96)},
                       {0, 2, 0, 0, rat(-1, 96)},
                       {0, 0, 0, 1, rat(-3, 96)}});
    put(f, c29, {7, 7, 7, 7});

    XyzwPoly c30 = xp({{1, 2, 0, 0, rat(1, 64)}});
    put(f, c30, {2, 3, 3, 4, 6});
    put(f, c30, {1, 3, 5, 6, 6});

    XyzwPoly c31 = xp({{2, 1, 0, 0, rat(1, 64)}});
    put(f, c31, {3, 3, 4, 5, 6});
    put(f, c31, {1, 2, 3, 6, 6});

    XyzwPoly c32 = xp({{1, 1, 1, 0, rat(1, 192)}});
    put(f, c32, {2, 2, 3, 6, 7}, 3);
    put(f, c32, {1, 3, 3, 6, 7}, 3);
    put(f, c32, {3, 5, 5, 6, 7}, 3);
    put(f, c32, {3, 4, 6, 6, 7}, 3);
    put(f, c32, {3, 6, 7, 7, 7}, 4);

    XyzwPoly c33 = xp({{2, 0, 1, 0, rat(1, 64)}, {0, 2, 1, 0, rat(1, 64)}});
    put(f, c33, {2, 3, 5, 6, 7});

    XyzwPoly c34 = xp({{2, 0, 0, 0, rat(1, 64)}, {0, 0, 0, 1, rat(-1, 64)}});
    put(f, c34, {5, 5, 7, 7}, 2);
    put(f, c34, {2, 2, 5, 5});
    put(f, c34, {2, 2, 7, 7}, 2);

    XyzwPoly c35 = xp({{2, 0, 0, 0, rat(1, 64)},
                       {0, 2, 0, 0, rat(-1, 64)},
                       {0, 0, 0, 1, rat(-2, 64)}});
    put(f, c35, {1, 1, 3, 3});
    put(f, c35, {4, 4, 6, 6});

    XyzwPoly c36 = xp({{1, 2, 0, 0, rat(1, 32)}});
    put(f, c36, {2, 3, 3, 7, 7});
    put(f, c36, {5, 6, 6, 7, 7});

    XyzwPoly c37 = xp({{2, 1, 0, 0, rat(1, 32)}});
    put(f, c37, {3, 3, 5, 7, 7});
    put(f, c37, {2, 6, 6, 7, 7});

    XyzwPoly c38 = xp({{1, 1, 0, 0, rat(1, 32)}});
    put(f, c38, {1, 2, 3, 5}, 2);
    put(f, c38, {1, 1, 6, 6});
    put(f, c38, {3, 3, 4, 4});

    XyzwPoly c39 = xp({{0, 0, 0, 1, rat(-1, 32)}});
    put(f, c39, {4, 5, 5, 6});
    put(f, c39, {1, 2, 2, 3});

    XyzwPoly c40 = xp({{2, 0, 0, 0, rat(1, 32)},
                       {0, 2, 0, 0, rat(-1, 32)},
                       {0, 0, 0, 1, rat(-1, 32)}});
    put(f, c40, {1, 3, 5, 5});
    put(f, c40, {2, 2, 4, 6});

    XyzwPoly c41 = xp({{2, 0, 0, 0, rat(1, 16)}, {0, 0, 0, 1, rat(-1, 16)}});
    put(f, c41, {1, 3, 7, 7});
    put(f, c41, {1, 3, 4, 6});
    put(f, c41, {4, 6, 7, 7});

    XyzwPoly c42 = xp({{1, 1, 0, 0, rat(1, 16)}});
    put(f, c42, {2, 4, 5, 6});
    put(f, c42, {2, 5, 7, 7}, 2);

    XyzwPoly c43 = xp({{1, 0, 1, 0, rat(1, 16)}});
    put(f, c43, {2, 3, 4, 7});
    put(f, c43, {1, 5, 6, 7});

    XyzwPoly c44 = xp({{0, 1, 1, 0, rat(1, 16)}});
    put(f, c44, {3, 4, 5, 7});
    put(f, c44, {1, 2, 6, 7});

    XyzwPoly c45 = xp({{1, 0, 0, 0, rat(1, 8)}});
    put(f, c45, {1, 1, 2});
    put(f, c45, {4, 4, 5});

    XyzwPoly c46 = xp({{0, 1, 0, 0, rat(1, 8)}});
    put(f, c46, {2, 4, 4});
    put(f, c46, {1, 1, 5});

    XyzwPoly c47 = xp({{0, 0, 1, 0, rat(1, 4)}});
    put(f, c47, {1, 4, 7});

    // pairing block: unit against the quadratic form, unit^2 against divisor
    XyzwPoly c48 = xp({{0, 0, 0, 0, rat(1, 8)}});
    put(f, c48, {0, 2, 2});
    put(f, c48, {0, 5, 5});
    put(f, c48, {0, 7, 7}, 2);
    put(f, c48, {0, 1, 3}, 2);
    put(f, c48, {0, 4, 6}, 2);

    XyzwPoly c49 = xp({{0, 0, 0, 0, rat(1, 2)}});
    put(f, c49, {0, 0, 8});

    return f;
}

}  // namespace

const LayeredPotential& f0_p442_data() {
    static const LayeredPotential f = make_f0_data();
    return f;
}

bool is_pairing_block_term(const ExpVec& outer) { return outer.at(0) > 0; }

int homogeneity_grade(const ExpVec& outer, const ExpVec& inner) {
    int t = 0;
    for (int e : outer) t += e;
    return t - inner.at(0) - inner.at(1) - inner.at(2) - 2 * inner.at(3);
}

HomogeneityReport homogeneity_check() {
    HomogeneityReport rep;
    const auto& f = f0_p442_data();
    rep.pass = true;
    auto show = [](const ExpVec& e) {
        std::string s = "(";
        for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        return s + ")";
    };
    for (const auto& [oe, coef] : f.terms()) {
        if (is_pairing_block_term(oe)) {
            ++rep.excluded;
            continue;
        }
        for (const auto& [ie, c] : coef.terms()) {
            ++rep.checked;
            int g = homogeneity_grade(oe, ie);
            if (g != 2) {
                rep.pass = false;
                std::ostringstream os;
                os << "grade " << g << " at outer=" << show(oe) << " inner=" << show(ie);
                rep.violations.push_back(os.str());
            }
        }
    }
    return rep;
}

SeriesPotential build_f0_p442(int order) {
    ModularFunctionSet m = xyzw_qexp(order);
    // power tables up to the maximal inner degrees of the closed form
    auto powers = [order](const QSeries& s, int top) {
        std::vector<QSeries> p;
        p.push_back(QSeries::constant(Rat(1)).truncated(order));
        for (int k = 1; k <= top; ++k) p.push_back((p.back() * s).truncated(order));
        return p;
    };
    std::vector<std::vector<QSeries>> pw = {powers(m.x, 6), powers(m.y, 6), powers(m.z, 5),
                                            powers(m.w, 1)};

    SeriesPotential out(9);
    for (const auto& [oe, coef] : f0_p442_data().terms()) {
        QSeries acc;
        for (const auto& [ie, c] : coef.terms()) {
            QSeries term = pw[0][static_cast<size_t>(ie[0])];
            for (int v = 1; v < 4; ++v)
                if (ie[static_cast<size_t>(v)] > 0)
                    term = (term * pw[static_cast<size_t>(v)][static_cast<size_t>(ie[static_cast<size_t>(v)])])
                               .truncated(order);
            acc = acc + term.scale(c);
        }
        out.add(oe, acc.truncated(order));
    }
    return out;
}

SeriesPotential potential_partial(const SeriesPotential& f, int var) {
    SeriesPotential r = f.partial(static_cast<size_t>(var));
    if (var == 8) {
        // divisor direction: q = e^{t8}, so the coefficients flow by q d/dq
        for (const auto& [e, c] : f.terms()) {
            QSeries d = c.qddq();
            if (!d.is_zero()) r.add(e, d);
        }
    }
    return r;
}

WdvvEngine::WdvvEngine(int order) : WdvvEngine(build_f0_p442(order), order) {}

WdvvEngine::WdvvEngine(SeriesPotential f, int order) : order_(order), f_(std::move(f)) {
    auto pp = pairing_p442();
    eta_inv_.assign(9, std::vector<Rat>(9, Rat(0)));
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            const QExt& v = pp.eta_inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!v.is_zero()) eta_inv_[static_cast<size_t>(i)][static_cast<size_t>(j)] = v.a;
        }
    // precompute all 165 distinct third partials so later reads are const
    std::map<int, SeriesPotential> first;
    for (int i = 0; i < 9; ++i) first.emplace(i, potential_partial(f_, i));
    for (int i = 0; i < 9; ++i) {
        for (int j = i; j < 9; ++j) {
            SeriesPotential fij = potential_partial(first.at(i), j);
            for (int k = j; k < 9; ++k) third_.emplace(std::array<int, 3>{i, j, k},
                                                       potential_partial(fij, k));
        }
    }
}

const SeriesPotential& WdvvEngine::third_partial(int i, int j, int k) const {
    std::array<int, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    return third_.at(key);
}

SeriesPotential WdvvEngine::pair_contraction(int a, int b, int c, int d) const {
    // keep every contribution on the same uniform grid mod q^order: products
    // of positive-valuation series carry precision past the build order, and
    // mixing those tails with truncated siblings would leave boundary garbage
    SeriesPotential acc(9);
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q) {
            const Rat& w = eta_inv_[static_cast<size_t>(p)][static_cast<size_t>(q)];
            if (w == 0) continue;
            SeriesPotential prod = third_partial(a, b, p) * third_partial(q, c, d);
            for (const auto& [e, s] : prod.terms()) acc.add(e, s.truncated(order_).scale(w));
        }
    return acc;
}

SeriesPotential WdvvEngine::residual(int i, int j, int k, int l) const {
    return pair_contraction(i, j, k, l) - pair_contraction(i, k, j, l);
}

WdvvSweepReport wdvv_sweep(int order, int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    WdvvEngine engine(order);

    // 4-element multisets of {0..8}
    std::vector<std::array<int, 4>> multisets;
    for (int a = 0; a < 9; ++a)
        for (int b = a; b < 9; ++b)
            for (int c = b; c < 9; ++c)
                for (int d = c; d < 9; ++d) multisets.push_back({a, b, c, d});

    WdvvSweepReport rep;
    rep.order = order;
    rep.quadruples = 9L * 9 * 9 * 9;
    std::mutex mu;

    auto worker = [&](size_t begin, size_t step) {
        for (size_t idx = begin; idx < multisets.size(); idx += step) {
            const auto& m = multisets[idx];
            // the three pairings of the multiset into two unordered pairs;
            // all ordered residuals vanish iff the three agree
            SeriesPotential ta = engine.pair_contraction(m[0], m[1], m[2], m[3]);
            SeriesPotential tb = engine.pair_contraction(m[0], m[2], m[1], m[3]);
            SeriesPotential tc = engine.pair_contraction(m[0], m[3], m[1], m[2]);
            if ((ta - tb).is_zero() && (ta - tc).is_zero() && (tb - tc).is_zero()) continue;
            // slow path (only on failure): test every distinct ordering
            std::array<int, 4> q = m;
            std::sort(q.begin(), q.end());
            std::lock_guard<std::mutex> lock(mu);
            do {
                if (!engine.residual(q[0], q[1], q[2], q[3]).is_zero()) {
                    ++rep.failures;
                    if (rep.failing.size() < 32) rep.failing.push_back(q);
                }
            } while (std::next_permutation(q.begin(), q.end()));
        }
    };

    int nthreads = std::max(1, jobs);
    if (nthreads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker, static_cast<size_t>(t), static_cast<size_t>(nthreads));
        for (auto& th : pool) th.join();
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

MultiPoly<Rat> f0_e7_fixture() {
    MultiPoly<Rat> f(9);
    // index of coordinate (a,b), row-major
    auto ix = [](int a, int b) { return (a - 1) * 3 + (b - 1); };
    const int T11 = ix(1, 1), T12 = ix(1, 2), T13 = ix(1, 3), T21 = ix(2, 1), T22 = ix(2, 2),
              T23 = ix(2, 3), T31 = ix(3, 1), T32 = ix(3, 2), T33 = ix(3, 3);
    auto add = [&](std::initializer_list<int> vars, const Rat& c) {
        ExpVec e(9, 0);
        for (int v : vars) ++e[static_cast<size_t>(v)];
        f.add(e, c);
    };
    // cubic block
    add({T11, T11, T33}, rat(1, 2));
    add({T11, T21, T23}, 1);
    add({T11, T12, T32}, 1);
    add({T11, T13, T31}, 1);
    add({T11, T22, T22}, rat(1, 2));
    add({T12, T21, T22}, 1);
    add({T12, T12, T31}, rat(1, 2));
    add({T21, T21, T13}, rat(1, 2));
    // t33-series on t12 t21 t22
    add({T12, T21, T22, T33, T33}, rat(1, 32));
    add({T12, T21, T22, T33, T33, T33, T33}, rat(1, 6144));
    add({T12, T21, T22, T33, T33, T33, T33, T33, T33}, rat(1, 327680));
    add({T12, T21, T22, T33, T33, T33, T33, T33, T33, T33, T33}, rat(289, 2642411520));
    // t33-series on t13 t21^2 and t12^2 t31 (constant 1/2 already above)
    for (int rep = 0; rep < 2; ++rep) {
        int u = rep == 0 ? T13 : T31;
        int v = rep == 0 ? T21 : T12;
        add({u, v, v, T33, T33, T33, T33}, rat(1, 3072));
        add({u, v, v, T33, T33, T33, T33, T33, T33, T33, T33}, rat(1, 330301440));
    }
    // seeds and their continuation on t12^2 t13 and t21^2 t31
    for (int rep = 0; rep < 2; ++rep) {
        int u = rep == 0 ? T13 : T31;
        int v = rep == 0 ? T12 : T21;
        add({u, v, v, T33}, rat(-1, 8));
        add({u, v, v, T33, T33, T33, T33, T33}, rat(-1, 61440));
    }
    return f;
}

Result<Rat> correlator_from_potential(const MultiPoly<Rat>& f, std::vector<int> insertions) {
    if (insertions.size() < 3) return Result<Rat>::fail(Err::BadInput, "need at least 3 insertions");
    std::sort(insertions.begin(), insertions.end());
    ExpVec e(f.nvars(), 0);
    for (int v : insertions) {
        if (v < 0 || v >= static_cast<int>(f.nvars()))
            return Result<Rat>::fail(Err::BadInput, "insertion out of range");
        ++e[static_cast<size_t>(v)];
    }
    if (f.degree_bound() != MultiPoly<Rat>::kNoBound &&
        MultiPoly<Rat>::total_degree(e) > f.degree_bound())
        return Result<Rat>::fail(Err::BadInput, "monomial beyond truncation");
    Rat aut = 1;
    for (int x : e) aut *= rat_factorial(x);
    return Result<Rat>::ok(f.coefficient(e) * aut);
}

std::map<std::vector<int>, Rat> e7_three_point_block() {
    std::map<std::vector<int>, Rat> out;
    const MultiPoly<Rat> fixture = f0_e7_fixture();
    for (const auto& [e, c] : fixture.terms()) {
        if (MultiPoly<Rat>::total_degree(e) != 3) continue;
        std::vector<int> key;
        Rat aut = 1;
        for (int v = 0; v < 9; ++v) {
            for (int r = 0; r < e[static_cast<size_t>(v)]; ++r) key.push_back(v);
            aut *= rat_factorial(e[static_cast<size_t>(v)]);
        }
        out[key] = c * aut;
    }
    return out;
}

std::map<std::vector<int>, Rat> e7_four_point_seeds() {
    std::map<std::vector<int>, Rat> out;
    out[{1, 1, 2, 8}] = rat(-1, 4);  // (t12, t12, t13, t33)
    out[{3, 3, 6, 8}] = rat(-1, 4);  // (t21, t21, t31, t33)
    return out;
}

namespace {

struct ReconstructContext {
    std::vector<Rat> iota;                  // per sector
    std::vector<int> dual;                  // pairing partner index
    std::vector<GroupElemE7> sectors;       // narrow basis
    std::map<std::vector<int>, Rat> table;  // known correlators

    bool is_zero_by_axioms(const std::vector<int>& key) const {
        const int n = static_cast<int>(key.size());
        Rat s = 0;
        bool has_unit = false;
        for (int v : key) {
            s += iota[static_cast<size_t>(v)];
            if (v == 0) has_unit = true;
        }
        if (s != n - 2) return true;  // dimension axiom
        if (has_unit && n >= 4) return true;  // unit only enters the pairing block
        std::vector<GroupElemE7> hs;
        hs.reserve(key.size());
        for (int v : key) hs.push_back(sectors[static_cast<size_t>(v)]);
        return !selection_linebundle(0, hs).admissible;  // line bundle degrees
    }

    // known value or unknown (second return false)
    std::pair<Rat, bool> lookup(const std::vector<int>& key) const {
        auto it = table.find(key);
        if (it != table.end()) return {it->second, true};
        if (is_zero_by_axioms(key)) return {Rat(0), true};
        return {Rat(0), false};
    }
};

}  // namespace

ReconstructReport reconstruct_wdvv(const std::map<std::vector<int>, Rat>& three_point,
                                   const std::map<std::vector<int>, Rat>& four_point_seeds,
                                   int max_points) {
    ReconstructReport rep;
    ReconstructContext ctx;
    ctx.sectors = narrow_basis();
    for (const auto& h : ctx.sectors) {
        ctx.iota.push_back(sector_info(h).iota);
        ctx.dual.push_back(narrow_index(h.inverse()));
    }
    ctx.table = three_point;
    for (const auto& [k, v] : four_point_seeds) {
        std::vector<int> key = k;
        std::sort(key.begin(), key.end());
        ctx.table[key] = v;
    }

    for (int n = 4; n <= max_points; ++n) {
        // unknowns at this level
        std::map<std::vector<int>, int> unknown_ix;
        {
            std::vector<int> key(static_cast<size_t>(n));
            std::function<void(int, int)> enumerate = [&](int pos, int from) {
                if (pos == n) {
                    if (!ctx.table.count(key) && !ctx.is_zero_by_axioms(key))
                        unknown_ix.emplace(key, static_cast<int>(unknown_ix.size()));
                    return;
                }
                for (int v = from; v <= 8; ++v) {
                    key[static_cast<size_t>(pos)] = v;
                    enumerate(pos + 1, v);
                }
            };
            enumerate(0, 1);  // non-unit only
        }

        const int m_size = n - 3;
        std::vector<std::vector<int>> extras;
        {
            std::vector<int> m(static_cast<size_t>(m_size));
            std::function<void(int, int)> enumerate = [&](int pos, int from) {
                if (pos == m_size) {
                    extras.push_back(m);
                    return;
                }
                for (int v = from; v <= 8; ++v) {
                    m[static_cast<size_t>(pos)] = v;
                    enumerate(pos + 1, v);
                }
            };
            enumerate(0, 1);
        }

        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        std::set<std::vector<Rat>> seen;  // deduplicate identical equations

        // one WDVV coefficient equation per (i, j<k, l, extra multiset)
        for (int i = 1; i <= 8; ++i)
            for (int j = 1; j <= 8; ++j)
                for (int k = j + 1; k <= 8; ++k)
                    for (int l = 1; l <= 8; ++l)
                        for (const auto& m : extras) {
                            // grading filter: nontrivial only when the total
                            // iota of (i,j,k,l,m) equals |m| + 1
                            Rat gr = ctx.iota[i] + ctx.iota[j] + ctx.iota[k] + ctx.iota[l];
                            for (int v : m) gr += ctx.iota[static_cast<size_t>(v)];
                            if (gr != m_size + 1) continue;

                            std::vector<Rat> row(unknown_ix.size(), Rat(0));
                            Rat constant = 0;
                            bool failed = false;

                            // iterate splits of the extra multiset as exponent vectors
                            std::vector<int> mexp(9, 0);
                            for (int v : m) ++mexp[static_cast<size_t>(v)];
                            std::vector<int> sub(9, 0);
                            std::function<void(int)> split = [&](int var) {
                                if (failed) return;
                                if (var == 9) {
                                    // sub = M1 exponents; complement = M2
                                    std::vector<int> m1key, m2key;
                                    Rat aut1 = 1, aut2 = 1;
                                    for (int v = 0; v < 9; ++v) {
                                        for (int r = 0; r < sub[static_cast<size_t>(v)]; ++r)
                                            m1key.push_back(v);
                                        for (int r = 0;
                                             r < mexp[static_cast<size_t>(v)] - sub[static_cast<size_t>(v)];
                                             ++r)
                                            m2key.push_back(v);
                                        aut1 *= rat_factorial(sub[static_cast<size_t>(v)]);
                                        aut2 *= rat_factorial(mexp[static_cast<size_t>(v)] -
                                                              sub[static_cast<size_t>(v)]);
                                    }
                                    Rat denom = aut1 * aut2;
                                    // sum over p (eta pairs p with dual(p)):
                                    // <i,j,p,M1><dual(p),k,l,M2> - <i,k,p,M1><dual(p),j,l,M2>
                                    for (int p = 0; p < 9; ++p) {
                                        int q = ctx.dual[static_cast<size_t>(p)];
                                        for (int side = 0; side < 2; ++side) {
                                            int jj = side == 0 ? j : k;
                                            int kk = side == 0 ? k : j;
                                            Rat sgn = side == 0 ? Rat(1) : Rat(-1);
                                            std::vector<int> left = m1key;
                                            left.push_back(i);
                                            left.push_back(jj);
                                            left.push_back(p);
                                            std::sort(left.begin(), left.end());
                                            std::vector<int> right = m2key;
                                            right.push_back(q);
                                            right.push_back(kk);
                                            right.push_back(l);
                                            std::sort(right.begin(), right.end());
                                            auto [lv, lk] = ctx.lookup(left);
                                            auto [rv, rk] = ctx.lookup(right);
                                            if (lk && rk) {
                                                constant += sgn * lv * rv / denom;
                                            } else if (lk && !rk) {
                                                if (lv != 0)
                                                    row[static_cast<size_t>(
                                                        unknown_ix.at(right))] +=
                                                        sgn * lv / denom;
                                            } else if (!lk && rk) {
                                                if (rv != 0)
                                                    row[static_cast<size_t>(unknown_ix.at(left))] +=
                                                        sgn * rv / denom;
                                            } else {
                                                // two unknowns multiply: cannot
                                                // happen when levels are processed
                                                // in order
                                                failed = true;
                                                return;
                                            }
                                        }
                                    }
                                    return;
                                }
                                for (int c = 0; c <= mexp[static_cast<size_t>(var)]; ++c) {
                                    sub[static_cast<size_t>(var)] = c;
                                    split(var + 1);
                                }
                                sub[static_cast<size_t>(var)] = 0;
                            };
                            split(0);
                            if (failed) {
                                rep.err = Err::BadInput;
                                rep.detail = "nonlinear equation encountered";
                                return rep;
                            }

                            bool any = false;
                            for (const auto& c : row)
                                if (c != 0) any = true;
                            if (!any) {
                                if (constant != 0) {
                                    rep.err = Err::InconsistentSeeds;
                                    std::ostringstream os;
                                    os << "constant equation violated at level " << n;
                                    rep.detail = os.str();
                                    return rep;
                                }
                                continue;
                            }
                            std::vector<Rat> sig = row;
                            sig.push_back(constant);
                            if (!seen.insert(std::move(sig)).second) continue;
                            ++rep.equations;
                            rows.push_back(std::move(row));
                            rhs.push_back(-constant);
                        }

        // Relabeling the two degree-4 coordinates of the quartic preserves the
        // singularity and acts on sector labels by (a,b) -> (b,a); every
        // correlator is invariant under that involution.  WDVV alone cannot
        // see a one-sided seed corruption: the diagonal rescalings fixing the
        // 3-point block form a torus that moves the two seeds independently,
        // so any seed pair extends to a consistent solution.  The symmetry
        // equations close that gap and also derive missing symmetry images.
        {
            static const int kSwap[9] = {0, 3, 6, 1, 4, 7, 2, 5, 8};
            std::vector<std::vector<int>> level_keys;
            for (const auto& [key, ix] : unknown_ix) level_keys.push_back(key);
            for (const auto& [key, val] : ctx.table)
                if (static_cast<int>(key.size()) == n) level_keys.push_back(key);
            for (const auto& key : level_keys) {
                std::vector<int> img;
                img.reserve(key.size());
                for (int v : key) img.push_back(kSwap[static_cast<size_t>(v)]);
                std::sort(img.begin(), img.end());
                if (!(key < img)) continue;  // one equation per pair; fixed keys drop out
                std::vector<Rat> row(unknown_ix.size(), Rat(0));
                Rat constant = 0;
                for (int side = 0; side < 2; ++side) {
                    const std::vector<int>& kk = side == 0 ? key : img;
                    const Rat sgn = side == 0 ? Rat(1) : Rat(-1);
                    auto [v, known] = ctx.lookup(kk);
                    if (known)
                        constant += sgn * v;
                    else
                        row[static_cast<size_t>(unknown_ix.at(kk))] += sgn;
                }
                bool any = false;
                for (const auto& c : row)
                    if (c != 0) any = true;
                if (!any) {
                    if (constant != 0) {
                        rep.err = Err::InconsistentSeeds;
                        std::ostringstream os;
                        os << "symmetry equation violated at level " << n;
                        rep.detail = os.str();
                        return rep;
                    }
                    continue;
                }
                std::vector<Rat> sig = row;
                sig.push_back(constant);
                if (!seen.insert(std::move(sig)).second) continue;
                ++rep.equations;
                rows.push_back(std::move(row));
                rhs.push_back(-constant);
            }
        }

        if (unknown_ix.empty()) continue;
        auto sol = solve_linear_exact(rows, rhs);
        if (!sol.has_value()) {
            if (sol.err == Err::NoFit) {
                rep.err = Err::InconsistentSeeds;
                std::ostringstream os;
                os << "conflicting equations at level " << n;
                rep.detail = os.str();
            } else {
                rep.err = Err::Underdetermined;
                std::ostringstream os;
                os << "unresolved unknowns at level " << n;
                rep.detail = os.str();
            }
            return rep;
        }
        for (const auto& [key, ix] : unknown_ix) {
            ctx.table[key] = (*sol)[static_cast<size_t>(ix)];
            rep.values[key] = (*sol)[static_cast<size_t>(ix)];
        }
        // record the axiom zeros for completeness of the report
        {
            std::vector<int> key(static_cast<size_t>(n));
            std::function<void(int, int)> enumerate = [&](int pos, int from) {
                if (pos == n) {
                    if (!rep.values.count(key) && !ctx.table.count(key)) rep.values[key] = 0;
                    return;
                }
                for (int v = from; v <= 8; ++v) {
                    key[static_cast<size_t>(pos)] = v;
                    enumerate(pos + 1, v);
                }
            };
            enumerate(0, 1);
        }
    }
    return rep;
}

}  // namespace cylg

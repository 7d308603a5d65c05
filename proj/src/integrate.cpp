#include "mono/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

namespace {

// Dormand-Prince 8(5,3) coefficients as used by Hairer's DOP853.
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

// Third-order embedded weights.
constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;

// Fifth-order error weights.
constexpr double er1 = 0.1312004499419488073250102996e-01;
constexpr double er6 = -0.1225156446376204440720569753e+01;
constexpr double er7 = -0.4957589496572501915214079952e+00;
constexpr double er8 = 0.1664377182454986536961530415e+01;
constexpr double er9 = -0.3503288487499736816886487290e+00;
constexpr double er10 = 0.3341791187130174790297318841e+00;
constexpr double er11 = 0.8192320648511571246570742613e-01;
constexpr double er12 = -0.2235530786388629525884427845e-01;

template <size_t N>
using State = std::array<Complex, N>;

// One DOP853 trial step; writes y1 and the two embedded error vectors.
template <size_t N, typename Deriv>
void dop853_stages(const Deriv& f, double t, double h, const State<N>& y, const State<N>& k1,
                   State<N>& y1, State<N>& err5, State<N>& err3) {
    State<N> k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, w;
    auto stage = [&](State<N>& out, double c, auto&&... terms) {
        for (size_t i = 0; i < N; ++i) {
            Complex acc{0.0};
            ((acc += terms.first * terms.second[i]), ...);
            w[i] = y[i] + h * acc;
        }
        f(t + c * h, w, out);
    };
    using P = std::pair<double, const State<N>&>;
    stage(k2, c2, P{a21, k1});
    stage(k3, c3, P{a31, k1}, P{a32, k2});
    stage(k4, c4, P{a41, k1}, P{a43, k3});
    stage(k5, c5, P{a51, k1}, P{a53, k3}, P{a54, k4});
    stage(k6, c6, P{a61, k1}, P{a64, k4}, P{a65, k5});
    stage(k7, c7, P{a71, k1}, P{a74, k4}, P{a75, k5}, P{a76, k6});
    stage(k8, c8, P{a81, k1}, P{a84, k4}, P{a85, k5}, P{a86, k6}, P{a87, k7});
    stage(k9, c9, P{a91, k1}, P{a94, k4}, P{a95, k5}, P{a96, k6}, P{a97, k7}, P{a98, k8});
    stage(k10, c10, P{a101, k1}, P{a104, k4}, P{a105, k5}, P{a106, k6}, P{a107, k7}, P{a108, k8},
          P{a109, k9});
    stage(k11, c11, P{a111, k1}, P{a114, k4}, P{a115, k5}, P{a116, k6}, P{a117, k7}, P{a118, k8},
          P{a119, k9}, P{a1110, k10});
    stage(k12, 1.0, P{a121, k1}, P{a124, k4}, P{a125, k5}, P{a126, k6}, P{a127, k7}, P{a128, k8},
          P{a129, k9}, P{a1210, k10}, P{a1211, k11});
    for (size_t i = 0; i < N; ++i) {
        Complex ksum = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                       b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
        y1[i] = y[i] + h * ksum;
        err3[i] = ksum - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k12[i];
        err5[i] = er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] + er9 * k9[i] +
                  er10 * k10[i] + er11 * k11[i] + er12 * k12[i];
    }
}

struct StepStats {
    long steps = 0;
    long rejected = 0;
    double log_scale = 0.0;
};

// Integrates t in [0,1] along one path segment with adaptive stepping and
// scalar renormalization.
template <size_t N, typename Deriv>
void run_segment(const Deriv& f, State<N>& y, const IntegratorConfig& cfg, double h_cap,
                 StepStats& stats) {
    double t = 0.0;
    double h = std::min(0.1, h_cap);
    const double tiny = 16.0 * 2.220446049250313e-16;
    State<N> k1, y1, err5v, err3v;
    long local_steps = 0;
    while (t < 1.0) {
        if (local_steps++ > 2000000)
            fail(ErrorKind::StepFailure, "step budget exhausted; tolerance unreachable");
        if (h < tiny) fail(ErrorKind::StepFailure, "step size underflow; tolerance unreachable");
        h = std::min({h, 1.0 - t, h_cap});
        f(t, y, k1);
        dop853_stages<N>(f, t, h, y, k1, y1, err5v, err3v);
        double e5 = 0.0, e3 = 0.0;
        for (size_t i = 0; i < N; ++i) {
            double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            e5 += std::norm(err5v[i] / sk);
            e3 += std::norm(err3v[i] / sk);
        }
        double deno = e5 + 0.01 * e3;
        if (deno <= 0.0) deno = 1.0;
        double err = h * e5 * std::sqrt(1.0 / ((double)N * deno));
        if (err <= 1.0) {
            t += h;
            y = y1;
            double norm = 0.0;
            for (size_t i = 0; i < N; ++i) norm = std::max(norm, std::abs(y[i]));
            if (norm > cfg.renorm_threshold) {
                for (size_t i = 0; i < N; ++i) y[i] /= norm;
                stats.log_scale += std::log(norm);
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-32), -0.125);
            h *= std::clamp(fac, 1.0 / 3.0, 6.0);
            ++stats.steps;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.125), 1.0 / 3.0, 1.0);
            ++stats.rejected;
        }
    }
}

void check_clearance(const RationalPotential& phi, const PlanarPath& path) {
    path.check_continuity();
    if (phi.is_polynomial()) return;
    std::vector<Complex> poles;
    for (const RootCluster& r : roots(phi.den)) poles.push_back(r.location);
    if (poles.empty()) return;
    double spacing = 1.0;
    if (poles.size() >= 2) {
        spacing = INFINITY;
        for (size_t i = 0; i < poles.size(); ++i)
            for (size_t j = i + 1; j < poles.size(); ++j)
                spacing = std::min(spacing, std::abs(poles[i] - poles[j]));
    }
    double c = path.clearance(poles);
    if (!(c > 1e-3 * spacing))
        fail(ErrorKind::PathTooClose, "path clearance below 1e-3 of the pole spacing");
}

template <size_t N>
void transport(const RationalPotential& phi, const PlanarPath& path, State<N>& y,
               const IntegratorConfig& cfg, StepStats& stats) {
    cfg.validate();
    check_clearance(phi, path);
    for (const PathSegment& seg : path.segments) {
        double len = seg.length();
        if (len == 0.0) continue;
        double h_cap = cfg.max_step > 0.0 ? std::min(1.0, cfg.max_step / len) : 1.0;
        auto deriv = [&](double t, const State<N>& s, State<N>& out) {
            Complex z = seg.at(t);
            Complex v = seg.velocity(t);
            Complex p = phi.eval(z);
            if constexpr (N == 4) {
                out[0] = -v * s[2];
                out[1] = -v * s[3];
                out[2] = -v * p * s[0];
                out[3] = -v * p * s[1];
            } else {
                out[0] = -v * s[1];
                out[1] = -v * p * s[0];
            }
        };
        run_segment<N>(deriv, y, cfg, h_cap, stats);
    }
}

} // namespace

TransportResult integrate(const RationalPotential& phi, const PlanarPath& path,
                          const std::array<Complex, 4>& y0, const IntegratorConfig& cfg) {
    Complex det0 = y0[0] * y0[3] - y0[1] * y0[2];
    if (det0 == Complex{0.0}) fail(ErrorKind::InvalidInput, "singular initial frame");
    State<4> y = y0;
    StepStats stats;
    transport<4>(phi, path, y, cfg, stats);
    TransportResult res;
    res.matrix = y;
    res.log_scale = stats.log_scale;
    res.steps = stats.steps;
    res.rejected = stats.rejected;
    Complex det1 = y[0] * y[3] - y[1] * y[2];
    // A is trace-free, so det Y is conserved; measure the drift in logs to
    // stay finite under renormalization.
    Complex drift = std::log(det1) + 2.0 * stats.log_scale - std::log(det0);
    double im = std::remainder(drift.imag(), 2.0 * M_PI);
    res.wronskian_drift = std::hypot(drift.real(), im);
    return res;
}

VectorTransport integrate_vector(const RationalPotential& phi, const PlanarPath& path,
                                 const std::array<Complex, 2>& v0, const IntegratorConfig& cfg) {
    State<2> y = v0;
    StepStats stats;
    transport<2>(phi, path, y, cfg, stats);
    return {y, stats.log_scale, stats.steps, stats.rejected};
}

ProjectiveMap monodromy(const RationalPotential& phi, const PlanarPath& loop,
                        const IntegratorConfig& cfg, TransportResult* diagnostics) {
    if (!loop.closed(1e-9)) fail(ErrorKind::InvalidInput, "monodromy requires a closed loop");
    TransportResult r = integrate(phi, loop,
                                  {Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}}, cfg);
    if (diagnostics) *diagnostics = r;
    return r.map();
}

std::vector<Complex> finite_pole_locations(const std::vector<PoleRecord>& poles) {
    std::vector<Complex> out;
    for (const auto& p : poles)
        if (!p.at_infinity) out.push_back(p.location);
    return out;
}

double pole_spacing(const std::vector<PoleRecord>& poles) {
    std::vector<Complex> fin = finite_pole_locations(poles);
    if (fin.size() < 2) return 1.0;
    double s = INFINITY;
    for (size_t i = 0; i < fin.size(); ++i)
        for (size_t j = i + 1; j < fin.size(); ++j) s = std::min(s, std::abs(fin[i] - fin[j]));
    return s;
}

} // namespace mono

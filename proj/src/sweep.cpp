#include "repseg/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repseg {

namespace {

constexpr double kAlphaMargin = 1e-12;  // strict future margin for certificates
constexpr double kStateProbe = 1e-9;    // state classification probe past an event

std::optional<double> first_of(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    return xs.front();
}

int kind_priority(int kind) {
    // Existence changes dominate, then structural changes, then endpoint
    // bookkeeping: 3, 2, 4, 5, 1.
    switch (kind) {
        case 3: return 0;
        case 2: return 1;
        case 4: return 2;
        case 5: return 3;
        default: return 4;
    }
}

}  // namespace

SweepEngine::SweepEngine(ConvexHull hull, double r, double alpha_start, bool keep_events)
    : hull_(std::move(hull)),
      r_(r),
      h_(hull_.size()),
      alpha_(alpha_start),
      alpha_end_(alpha_start + kPi),
      keep_events_(keep_events) {
    if (h_ < 3) throw std::invalid_argument("SweepEngine: hull must have >= 3 vertices");
    if (r_ <= 0.0) throw std::invalid_argument("SweepEngine: r must be positive");
    index_.emplace(hull_, r_);
    best_len_ = std::numeric_limits<double>::infinity();
    event_budget_ = 2000 + 64L * h_ * static_cast<long>(std::log2(h_) + 4.0);
    range_anchor_.fill(-1);

    // Owners are selected just past the start orientation: the sweep often
    // starts exactly at a hull-edge orientation, where the extreme vertex
    // ties with its neighbor.
    double a0 = alpha_ + kStateProbe;
    owner1_ = 0;
    owner2_ = 0;
    for (int k = 1; k < h_; ++k) {
        if (y_of(k, a0) < y_of(owner1_, a0)) owner1_ = k;
        if (y_of(k, a0) > y_of(owner2_, a0)) owner2_ = k;
    }
    exists_ = strip_top_at(a0) >= strip_bottom_at(a0);
    if (!exists_) throw std::logic_error("SweepEngine: start orientation infeasible");
    rebuild_solution(false);
    refresh_type2_certs();
    refresh_type3_cert();
    settle_minimizer_state();
    update_best_over(alpha_, alpha_);
}

double SweepEngine::strip_top() const { return strip_top_at(alpha_); }
double SweepEngine::strip_bottom() const { return strip_bottom_at(alpha_); }

std::optional<double> SweepEngine::next_violation() const {
    std::optional<double> best;
    for (const auto& c : certs_) {
        if (c && (!best || c->violation_alpha < *best)) best = c->violation_alpha;
    }
    return best;
}

void SweepEngine::rebuild_solution(bool via_restart) {
    if (!exists_) {
        s1_ = ChainSkeleton{};
        s2_ = ChainSkeleton{};
        certs_[static_cast<size_t>(CertSlot::Type1S1)].reset();
        certs_[static_cast<size_t>(CertSlot::Type1S2)].reset();
        for (CertSlot s : {CertSlot::EndS1Top, CertSlot::EndS1Bottom, CertSlot::EndS2Top,
                           CertSlot::EndS2Bottom})
            certs_[static_cast<size_t>(s)].reset();
        return;
    }
    if (via_restart) {
        auto [right, left] = restart_caps_in_frame(*index_, hull_, r_, Frame(alpha_));
        if (right.witness < 0 || left.witness < 0)
            throw std::logic_error("SweepEngine: restart produced no caps");
        s1_ = ChainSkeleton{};
        s1_.supports = {right.witness};
        s2_ = ChainSkeleton{};
        s2_.supports = {left.witness};
    } else {
        double a = alpha_ + kStateProbe;
        Frame f(a);
        s1_ = build_chain_skeleton(hull_, r_, f, strip_bottom_at(a), strip_top_at(a),
                                   ChainSide::S1);
        s2_ = build_chain_skeleton(hull_, r_, f, strip_bottom_at(a), strip_top_at(a),
                                   ChainSide::S2);
    }
    for (CertSlot s : {CertSlot::EndS1Top, CertSlot::EndS1Bottom, CertSlot::EndS2Top,
                       CertSlot::EndS2Bottom})
        range_anchor_[static_cast<size_t>(s)] = -1;
    derive_minimizer_state();
    refresh_type1_certs();
    refresh_all_end_certs();
}

void SweepEngine::derive_minimizer_state(double probe) {
    double a = alpha_ + probe;
    Frame f(a);
    ChainOptimum opt =
        minimize_chain_span(hull_, r_, f, s1_, s2_, strip_bottom_at(a), strip_top_at(a));
    state_.kind = opt.kind;
    state_.s1_arc = opt.s1_arc;
    state_.s2_arc = opt.s2_arc;
    state_.s1_vertex = opt.s1_vertex;
    state_.s2_vertex = opt.s2_vertex;
}

void SweepEngine::settle_minimizer_state() {
    // Right at an event the minimizer classification can sit on a knife
    // edge (e.g. a chain vertex exactly on a strip line). Re-derive at a
    // resolvable probe inside the quiet interval and keep that reading.
    if (!exists_) return;
    double nv = next_violation().value_or(alpha_end_);
    double probe = std::min(1e-6, 0.5 * (nv - alpha_));
    if (probe <= 2.0 * kStateProbe) return;
    MinimizerState before = state_;
    derive_minimizer_state(probe);
    if (state_.kind != before.kind || state_.s1_arc != before.s1_arc ||
        state_.s2_arc != before.s2_arc || state_.s1_vertex != before.s1_vertex ||
        state_.s2_vertex != before.s2_vertex) {
        refresh_type1_certs();
    }
}

double SweepEngine::span_at(double a, const MinimizerState& st, double* y_out, double* x1_out,
                            double* x2_out) const {
    Frame f(a);
    double y = 0.0;
    switch (st.kind) {
        case MinimizerKind::ArcArc:
            y = 0.5 * (y_of(s1_.supports[st.s1_arc], a) + y_of(s2_.supports[st.s2_arc], a));
            break;
        case MinimizerKind::VertexArc:
            y = f.n.dot(s1_.breakpoints[st.s1_vertex]);
            break;
        case MinimizerKind::ArcVertex:
            y = f.n.dot(s2_.breakpoints[st.s2_vertex]);
            break;
        case MinimizerKind::PinnedTop:
            y = strip_top_at(a);
            break;
        case MinimizerKind::PinnedBottom:
            y = strip_bottom_at(a);
            break;
    }
    double x1 = st.kind == MinimizerKind::VertexArc
                    ? f.u.dot(s1_.breakpoints[st.s1_vertex])
                    : half_circle_x(hull_, r_, f, s1_.supports[st.s1_arc], y, ChainSide::S1);
    double x2 = st.kind == MinimizerKind::ArcVertex
                    ? f.u.dot(s2_.breakpoints[st.s2_vertex])
                    : half_circle_x(hull_, r_, f, s2_.supports[st.s2_arc], y, ChainSide::S2);
    if (y_out) *y_out = y;
    if (x1_out) *x1_out = x1;
    if (x2_out) *x2_out = x2;
    return x1 - x2;
}

Segment SweepEngine::current_segment() const {
    if (!exists_) throw std::logic_error("current_segment: no solution at this orientation");
    double y, x1, x2;
    span_at(alpha_, state_, &y, &x1, &x2);
    Frame f(alpha_);
    return Segment(f.from_frame({x1, y}), f.from_frame({x2, y}));
}

ChainOptimum SweepEngine::current_optimum() const { return optimum_at(alpha_); }

ChainOptimum SweepEngine::optimum_at(double alpha_abs) const {
    if (!exists_) throw std::logic_error("optimum_at: no solution at this orientation");
    ChainOptimum opt;
    opt.kind = state_.kind;
    opt.s1_arc = state_.s1_arc;
    opt.s2_arc = state_.s2_arc;
    opt.s1_vertex = state_.s1_vertex;
    opt.s2_vertex = state_.s2_vertex;
    double y, x1, x2;
    double span = span_at(alpha_abs, state_, &y, &x1, &x2);
    opt.y = y;
    opt.s1_x = x1;
    opt.s2_x = x2;
    opt.length = std::max(0.0, span);
    Frame f(alpha_abs);
    opt.segment = Segment(f.from_frame({x1, y}), f.from_frame({x2, y}));
    return opt;
}

void SweepEngine::update_best_over(double a_lo, double a_hi) {
    if (!exists_) return;
    std::vector<double> cands{a_lo, a_hi};
    Vec2 g;
    bool have_g = false;
    switch (state_.kind) {
        case MinimizerKind::ArcArc:
            g = hull_.vertices[s1_.supports[state_.s1_arc]] -
                hull_.vertices[s2_.supports[state_.s2_arc]];
            have_g = true;
            break;
        case MinimizerKind::VertexArc:
            g = s1_.breakpoints[state_.s1_vertex] - hull_.vertices[s2_.supports[state_.s2_arc]];
            have_g = true;
            break;
        case MinimizerKind::ArcVertex:
            g = hull_.vertices[s1_.supports[state_.s1_arc]] - s2_.breakpoints[state_.s2_vertex];
            have_g = true;
            break;
        default:
            break;
    }
    if (have_g && g.norm() > 0.0) {
        // Interior critical points: segment direction aligned with g.
        double base = std::atan2(g.y, g.x);
        double k = std::ceil((a_lo - base) / kPi);
        for (double a = base + k * kPi; a < a_hi; a += kPi) {
            if (a > a_lo) cands.push_back(a);
        }
    } else if (a_hi - a_lo > 1e-12 &&
               (state_.kind == MinimizerKind::PinnedTop ||
                state_.kind == MinimizerKind::PinnedBottom)) {
        // No closed form for the strip-pinned span, and it need not be
        // unimodal over a long interval: sample, then refine locally by
        // golden section.
        const int kGrid = 64;
        double best_a = a_lo, best_v = span_at(a_lo, state_);
        for (int i = 1; i <= kGrid; ++i) {
            double a = a_lo + (a_hi - a_lo) * i / kGrid;
            double v = span_at(a, state_);
            if (v < best_v) {
                best_v = v;
                best_a = a;
            }
        }
        double step = (a_hi - a_lo) / kGrid;
        double lo = std::max(a_lo, best_a - step), hi = std::min(a_hi, best_a + step);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = span_at(x1, state_), f2 = span_at(x2, state_);
        while (hi - lo > 1e-10) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = span_at(x1, state_);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = span_at(x2, state_);
            }
        }
        cands.push_back(0.5 * (lo + hi));
    }
    for (double a : cands) {
        double y, x1, x2;
        double span = span_at(a, state_, &y, &x1, &x2);
        double len = std::max(0.0, span);
        if (len < best_len_) {
            best_len_ = len;
            best_alpha_ = a;
            Frame f(a);
            best_seg_ = Segment(f.from_frame({x1, y}), f.from_frame({x2, y}));
        }
    }
}

// --- certificates ---------------------------------------------------------

void SweepEngine::refresh_type2_certs() {
    auto make = [&](int owner, CertSlot slot) {
        std::optional<Certificate> best;
        for (int nb : {hull_.cyclic_index(owner - 1), hull_.cyclic_index(owner + 1)}) {
            Vec2 g = hull_.vertices[nb] - hull_.vertices[owner];
            auto a = first_of(solve_dot_n(g, 0.0, alpha_ + kAlphaMargin, alpha_end_));
            if (!a) continue;
            if (!best || *a < best->violation_alpha) {
                Certificate c;
                c.kind = 2;
                c.slot = slot;
                c.violation_alpha = *a;
                c.hit_circle = nb;
                best = c;
            }
        }
        certs_[static_cast<size_t>(slot)] = best;
    };
    make(owner1_, CertSlot::Type2Tau1);
    make(owner2_, CertSlot::Type2Tau2);
}

void SweepEngine::refresh_type3_cert() {
    Vec2 g = hull_.vertices[owner2_] - hull_.vertices[owner1_];
    auto a = first_of(solve_dot_n(g, 2.0 * r_, alpha_ + kAlphaMargin, alpha_end_));
    std::optional<Certificate> c;
    if (a) {
        Certificate cert;
        cert.kind = 3;
        cert.slot = CertSlot::Type3;
        cert.violation_alpha = *a;
        c = cert;
    }
    certs_[static_cast<size_t>(CertSlot::Type3)] = c;
}

void SweepEngine::refresh_type1_certs() {
    certs_[static_cast<size_t>(CertSlot::Type1S1)] = make_type1_cert(CertSlot::Type1S1);
    certs_[static_cast<size_t>(CertSlot::Type1S2)] = make_type1_cert(CertSlot::Type1S2);
}

std::optional<Certificate> SweepEngine::make_type1_cert(CertSlot slot) const {
    if (!exists_) return std::nullopt;
    bool on_s1 = slot == CertSlot::Type1S1;
    std::vector<std::pair<double, int>> cands;  // alpha, transition code

    auto mid = [&](int i, int j) {
        return (hull_.vertices[i] + hull_.vertices[j]) * 0.5;
    };
    auto push = [&](std::optional<double> a, int code) {
        if (a) cands.push_back({*a, code});
    };
    double lo = alpha_ + kAlphaMargin, hi = alpha_end_;
    const Point2& p1 = hull_.vertices[owner1_];
    const Point2& p2 = hull_.vertices[owner2_];

    switch (state_.kind) {
        case MinimizerKind::ArcArc: {
            int i = s1_.supports[state_.s1_arc];
            int j = s2_.supports[state_.s2_arc];
            Point2 m = mid(i, j);
            if (on_s1) {
                if (state_.s1_arc > 0)
                    push(first_of(solve_dot_n(s1_.breakpoints[state_.s1_arc - 1] - m, 0.0, lo, hi)), 1);
                if (state_.s1_arc + 1 < s1_.arc_count())
                    push(first_of(solve_dot_n(s1_.breakpoints[state_.s1_arc] - m, 0.0, lo, hi)), 2);
                if (state_.s1_arc == 0) push(first_of(solve_dot_n(m - p1, r_, lo, hi)), 3);
                if (state_.s1_arc + 1 == s1_.arc_count())
                    push(first_of(solve_dot_n(m - p2, -r_, lo, hi)), 4);
            } else {
                if (state_.s2_arc > 0)
                    push(first_of(solve_dot_n(s2_.breakpoints[state_.s2_arc - 1] - m, 0.0, lo, hi)), 1);
                if (state_.s2_arc + 1 < s2_.arc_count())
                    push(first_of(solve_dot_n(s2_.breakpoints[state_.s2_arc] - m, 0.0, lo, hi)), 2);
                if (state_.s2_arc == 0) push(first_of(solve_dot_n(m - p1, r_, lo, hi)), 3);
                if (state_.s2_arc + 1 == s2_.arc_count())
                    push(first_of(solve_dot_n(m - p2, -r_, lo, hi)), 4);
            }
            break;
        }
        case MinimizerKind::VertexArc: {
            const Point2& v = s1_.breakpoints[state_.s1_vertex];
            int j = s2_.supports[state_.s2_arc];
            if (on_s1) {
                push(first_of(solve_dot_n(v - mid(s1_.supports[state_.s1_vertex], j), 0.0, lo, hi)), 5);
                push(first_of(solve_dot_n(v - mid(s1_.supports[state_.s1_vertex + 1], j), 0.0, lo, hi)), 6);
            } else {
                if (state_.s2_arc > 0)
                    push(first_of(solve_dot_n(v - s2_.breakpoints[state_.s2_arc - 1], 0.0, lo, hi)), 7);
                if (state_.s2_arc + 1 < s2_.arc_count())
                    push(first_of(solve_dot_n(v - s2_.breakpoints[state_.s2_arc], 0.0, lo, hi)), 8);
                if (state_.s2_arc == 0) push(first_of(solve_dot_n(v - p1, r_, lo, hi)), 3);
                if (state_.s2_arc + 1 == s2_.arc_count())
                    push(first_of(solve_dot_n(v - p2, -r_, lo, hi)), 4);
            }
            break;
        }
        case MinimizerKind::ArcVertex: {
            const Point2& w = s2_.breakpoints[state_.s2_vertex];
            int i = s1_.supports[state_.s1_arc];
            if (!on_s1) {
                push(first_of(solve_dot_n(w - mid(i, s2_.supports[state_.s2_vertex]), 0.0, lo, hi)), 5);
                push(first_of(solve_dot_n(w - mid(i, s2_.supports[state_.s2_vertex + 1]), 0.0, lo, hi)), 6);
            } else {
                if (state_.s1_arc > 0)
                    push(first_of(solve_dot_n(w - s1_.breakpoints[state_.s1_arc - 1], 0.0, lo, hi)), 7);
                if (state_.s1_arc + 1 < s1_.arc_count())
                    push(first_of(solve_dot_n(w - s1_.breakpoints[state_.s1_arc], 0.0, lo, hi)), 8);
                if (state_.s1_arc == 0) push(first_of(solve_dot_n(w - p1, r_, lo, hi)), 3);
                if (state_.s1_arc + 1 == s1_.arc_count())
                    push(first_of(solve_dot_n(w - p2, -r_, lo, hi)), 4);
            }
            break;
        }
        case MinimizerKind::PinnedTop: {
            if (!on_s1) return std::nullopt;
            Point2 m = mid(s1_.supports.front(), s2_.supports.front());
            push(first_of(solve_dot_n(m - p1, r_, lo, hi)), 9);
            break;
        }
        case MinimizerKind::PinnedBottom: {
            if (!on_s1) return std::nullopt;
            Point2 m = mid(s1_.supports.back(), s2_.supports.back());
            push(first_of(solve_dot_n(m - p2, -r_, lo, hi)), 10);
            break;
        }
    }
    if (cands.empty()) return std::nullopt;
    auto it = std::min_element(cands.begin(), cands.end());
    Certificate c;
    c.kind = 1;
    c.slot = slot;
    c.violation_alpha = it->first;
    c.transition = it->second;
    return c;
}

SweepEngine::EndContext SweepEngine::end_context(CertSlot slot) const {
    EndContext ctx;
    ctx.side = (slot == CertSlot::EndS1Top || slot == CertSlot::EndS1Bottom) ? ChainSide::S1
                                                                             : ChainSide::S2;
    ctx.top = slot == CertSlot::EndS1Top || slot == CertSlot::EndS2Top;
    ctx.owner = ctx.top ? owner1_ : owner2_;
    ctx.line_sign = ctx.top ? 1.0 : -1.0;
    const ChainSkeleton& ch = ctx.side == ChainSide::S1 ? s1_ : s2_;
    ctx.end_arc_support = ch.supports.empty() ? -1
                          : (ctx.top ? ch.supports.front() : ch.supports.back());
    return ctx;
}

ChainSkeleton& SweepEngine::chain_of(CertSlot slot) {
    return (slot == CertSlot::EndS1Top || slot == CertSlot::EndS1Bottom) ? s1_ : s2_;
}
const ChainSkeleton& SweepEngine::chain_of(CertSlot slot) const {
    return (slot == CertSlot::EndS1Top || slot == CertSlot::EndS1Bottom) ? s1_ : s2_;
}

void SweepEngine::refresh_all_end_certs() {
    for (CertSlot s : {CertSlot::EndS1Top, CertSlot::EndS1Bottom, CertSlot::EndS2Top,
                       CertSlot::EndS2Bottom})
        certs_[static_cast<size_t>(s)] = make_end_cert(s);
}

void SweepEngine::refresh_end_cert(CertSlot slot) {
    certs_[static_cast<size_t>(slot)] = make_end_cert(slot);
}

std::optional<Certificate> SweepEngine::make_end_cert(CertSlot slot) const {
    if (!exists_) return std::nullopt;
    EndContext ctx = end_context(slot);
    const ChainSkeleton& ch = chain_of(slot);
    if (ch.empty()) return std::nullopt;
    const Point2& p_owner = hull_.vertices[ctx.owner];
    double lo = alpha_ + kAlphaMargin, hi = alpha_end_;
    int j = ctx.end_arc_support;

    std::vector<Certificate> cands;
    // The moving chain endpoint at this end must coincide with the crossing
    // point when the certificate fires; candidates failing that are mirror
    // crossings and get filtered here.
    auto endpoint_matches = [&](double a, const Point2& z) {
        double y_end = ctx.top ? strip_top_at(a) : strip_bottom_at(a);
        Frame f(a);
        double xe = half_circle_x(hull_, r_, f, j, y_end, ctx.side);
        Point2 expected = f.from_frame({xe, y_end});
        return distance(expected, z) <= 1e-7 * (1.0 + r_);
    };
    auto add_crossing = [&](int k_circle, const Point2& z) {
        // The strip line passes z when (z - p_owner).n = sign * r. When z
        // lies on the owner circle itself this is a grazing contact with a
        // double root; solve for the aligned normal directly so the event
        // fires exactly once.
        Vec2 g = z - p_owner;
        std::vector<double> sols;
        double gn = g.norm();
        if (std::abs(gn - r_) <= 1e-9 * (1.0 + r_) && gn > 0.0) {
            Vec2 n_target = g * (ctx.line_sign / gn);
            double a0 = std::atan2(-n_target.x, n_target.y);
            double k = std::ceil((lo - a0) / (2.0 * kPi));
            for (double a = a0 + k * 2.0 * kPi; a <= hi; a += 2.0 * kPi) {
                if (a > lo) sols.push_back(a);
            }
        } else {
            sols = solve_dot_n(g, ctx.line_sign * r_, lo, hi);
        }
        for (double a : sols) {
            if (!endpoint_matches(a, z)) continue;
            Certificate c;
            c.kind = 5;  // classified 4/5 when fired
            c.slot = slot;
            c.violation_alpha = a;
            c.hit_circle = k_circle;
            c.witness = z;
            cands.push_back(c);
            break;
        }
    };

    // Removal: the endpoint reaches the vertex shared with the second arc.
    if (ch.arc_count() >= 2) {
        const Point2& z = ctx.top ? ch.breakpoints.front() : ch.breakpoints.back();
        int second = ctx.top ? ch.supports[1] : ch.supports[ch.arc_count() - 2];
        add_crossing(second, z);
    }

    auto add_circle_pair = [&](int base, int k) {
        if (distance(hull_.vertices[base], hull_.vertices[k]) > 2.0 * r_) return;
        CircleIntersections xs =
            circle_circle_intersections(Circle(hull_.vertices[base], r_), Circle(hull_.vertices[k], r_));
        for (const Point2& z : xs.points) add_crossing(k, z);
    };

    if (j == ctx.owner) {
        // Tangent regime: the endpoint is the pole of the owner circle; scan
        // all circles it can cross.
        for (int k = 0; k < h_; ++k) {
            if (k == ctx.owner) continue;
            add_circle_pair(ctx.owner, k);
        }
    } else {
        // The owner circle's arc may appear at this end (type 4).
        add_circle_pair(j, ctx.owner);
        // Candidate circles strictly between the anchor and the end arc in
        // the chain-side hull window (narrowed by internal events).
        int anchor = range_anchor_[static_cast<size_t>(slot)];
        if (anchor < 0) anchor = ctx.owner;
        int dir_step = ctx.side == ChainSide::S1 ? -1 : 1;
        if (!ctx.top) dir_step = -dir_step;  // windows run from the strip-line owner toward the arc
        // Walk from anchor toward j, excluding both.
        std::vector<int> range;
        int steps = 0;
        for (int k = hull_.cyclic_index(anchor + dir_step); k != j && steps < h_;
             k = hull_.cyclic_index(k + dir_step), ++steps) {
            if (k == ctx.owner) break;
            range.push_back(k);
        }
        bool range_done = false;
        if (!range.empty() && index_) {
            // Fast path: circular ray query along the end arc's circle. The
            // query range must run cyclically ascending in hull order.
            double a_now = alpha_;
            double y_end = ctx.top ? strip_top_at(a_now) : strip_bottom_at(a_now);
            Frame f(a_now);
            double xe = half_circle_x(hull_, r_, f, j, y_end, ctx.side);
            Point2 vtau = f.from_frame({xe, y_end});
            int lo_idx = dir_step > 0 ? range.front() : range.back();
            int hi_idx = dir_step > 0 ? range.back() : range.front();
            Circle cj(hull_.vertices[j], r_);
            double theta = std::atan2(vtau.y - cj.center.y, vtau.x - cj.center.x);
            double denom = dir(theta).perp().dot(f.n) * r_;
            if (std::abs(denom) > 1e-9 * r_ &&
                index_->point_in_range_intersection(lo_idx, hi_idx, vtau, 1e-9)) {
                double dtheta = (vtau - p_owner).dot(f.u) / denom;
                Winding w = dtheta > 0 ? Winding::CounterClockwise : Winding::Clockwise;
                auto hit = index_->circular_ray_query(lo_idx, hi_idx, cj, vtau, w);
                size_t before = cands.size();
                if (hit) add_crossing(hit->owner, hit->point);
                if (hit && cands.size() > before) range_done = true;
                if (!hit) range_done = true;
            }
        }
        if (!range_done) {
            for (int k : range) add_circle_pair(j, k);
        }
    }
    if (cands.empty()) return std::nullopt;
    auto it = std::min_element(cands.begin(), cands.end(),
                               [](const Certificate& a, const Certificate& b) {
                                   if (a.violation_alpha != b.violation_alpha)
                                       return a.violation_alpha < b.violation_alpha;
                                   return a.hit_circle < b.hit_circle;
                               });
    return *it;
}

// --- event handling --------------------------------------------------------

void SweepEngine::handle_type1(const Certificate&) {
    // The minimizer state is re-derived uniformly after every event; the
    // certificate's role is to pin the orientation at which motion changes.
}

void SweepEngine::handle_type2(const Certificate& c, CertSlot slot) {
    if (slot == CertSlot::Type2Tau1) {
        owner1_ = c.hit_circle;
    } else {
        owner2_ = c.hit_circle;
    }
    refresh_type2_certs();
    refresh_type3_cert();
    refresh_all_end_certs();
}

void SweepEngine::handle_type3() {
    if (exists_) {
        exists_ = false;
        rebuild_solution(false);  // clears chains and endpoint certificates
    } else {
        exists_ = true;
        rebuild_solution(true);
    }
    refresh_type3_cert();
}

bool SweepEngine::handle_end(const Certificate& c, CertSlot slot, EventRecord& rec) {
    EndContext ctx = end_context(slot);
    ChainSkeleton& ch = chain_of(slot);
    int k = c.hit_circle;
    const Point2& z = c.witness;
    bool regime_tangent = ctx.end_arc_support == ctx.owner;

    // Removal: the hit is the stored vertex shared with the second arc.
    if (ch.arc_count() >= 2) {
        const Point2& bp = ctx.top ? ch.breakpoints.front() : ch.breakpoints.back();
        int second = ctx.top ? ch.supports[1] : ch.supports[ch.arc_count() - 2];
        if (k == second && distance(z, bp) <= 1e-9 * (1.0 + r_)) {
            if (ctx.top) {
                ch.supports.erase(ch.supports.begin());
                ch.breakpoints.erase(ch.breakpoints.begin());
            } else {
                ch.supports.pop_back();
                ch.breakpoints.pop_back();
            }
            rec.kind = regime_tangent ? 4 : 5;
            range_anchor_[static_cast<size_t>(slot)] = -1;
            return true;
        }
    }

    // Convex-semicircle test: for S1 the convex side is the left half in the
    // sweep frame, for S2 the right half.
    Frame f(alpha_);
    double zu = f.u.dot(z), ku = f.u.dot(hull_.vertices[k]);
    bool convex = ctx.side == ChainSide::S1 ? zu <= ku + 1e-9 * (1.0 + r_)
                                            : zu >= ku - 1e-9 * (1.0 + r_);
    if (convex) {
        if (ctx.top) {
            ch.supports.insert(ch.supports.begin(), k);
            ch.breakpoints.insert(ch.breakpoints.begin(), z);
        } else {
            ch.supports.push_back(k);
            ch.breakpoints.push_back(z);
        }
        rec.kind = k == ctx.owner ? 4 : 5;
        range_anchor_[static_cast<size_t>(slot)] = -1;
        return true;
    }
    // Internal event: no structural change, narrow the query range.
    rec.kind = 5;
    rec.internal = true;
    range_anchor_[static_cast<size_t>(slot)] = k;
    refresh_end_cert(slot);
    return false;
}

bool SweepEngine::step() {
    // Next certificate: earliest violation, ties resolved by kind priority.
    int best = -1;
    for (int s = 0; s < static_cast<int>(CertSlot::Count); ++s) {
        if (!certs_[s]) continue;
        if (best < 0) {
            best = s;
            continue;
        }
        double a = certs_[s]->violation_alpha, b = certs_[best]->violation_alpha;
        if (a < b - kAlphaMargin) {
            best = s;
        } else if (a <= b + kAlphaMargin &&
                   kind_priority(certs_[s]->kind) < kind_priority(certs_[best]->kind)) {
            best = s;
        }
    }
    if (best < 0 || certs_[best]->violation_alpha >= alpha_end_) {
        update_best_over(alpha_, alpha_end_);
        alpha_ = alpha_end_;
        return false;
    }
    Certificate c = *certs_[best];
    update_best_over(alpha_, c.violation_alpha);
    alpha_ = c.violation_alpha;
    certs_[best].reset();

    EventRecord rec;
    rec.kind = c.kind;
    rec.orientation = OrientationAngle(alpha_).alpha;
    rec.slot = c.slot;

    bool structural = true;
    switch (c.slot) {
        case CertSlot::Type1S1:
        case CertSlot::Type1S2:
            handle_type1(c);
            break;
        case CertSlot::Type2Tau1:
        case CertSlot::Type2Tau2:
            handle_type2(c, c.slot);
            break;
        case CertSlot::Type3:
            handle_type3();
            break;
        default:
            structural = handle_end(c, c.slot, rec);
            break;
    }
    if (structural && exists_) {
        derive_minimizer_state();
        refresh_type1_certs();
        if (c.slot == CertSlot::EndS1Top || c.slot == CertSlot::EndS1Bottom) {
            refresh_end_cert(CertSlot::EndS1Top);
            refresh_end_cert(CertSlot::EndS1Bottom);
        } else if (c.slot == CertSlot::EndS2Top || c.slot == CertSlot::EndS2Bottom) {
            refresh_end_cert(CertSlot::EndS2Top);
            refresh_end_cert(CertSlot::EndS2Bottom);
        }
        settle_minimizer_state();
    }
    trace_.record(rec, keep_events_);
    if (audit) audit(*this, rec);
    if (trace_.total > event_budget_)
        throw std::logic_error("SweepEngine: event budget exceeded");
    return true;
}

void SweepEngine::run() {
    while (step()) {
    }
}

// --- top-level solver ------------------------------------------------------

namespace {

Point2 rotate_point(const Point2& p, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, c * p.y + s * p.x};
}

// When the hull width equals 2r to within rounding, the feasible set of
// orientations collapses to the width orientation; the optimum is the
// critical-line segment between the two envelope extremes.
SweepResult critical_orientation_solution(const ConvexHull& hull, double r,
                                          OrientationAngle alpha) {
    Frame f(alpha.alpha);
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const Point2& p : hull.vertices) {
        double y = f.n.dot(p);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    double y_mid = 0.5 * (ymin + ymax);
    double right = -std::numeric_limits<double>::infinity();
    double left = std::numeric_limits<double>::infinity();
    for (int k = 0; k < hull.size(); ++k) {
        right = std::max(right, half_circle_x(hull, r, f, k, y_mid, ChainSide::S1));
        left = std::min(left, half_circle_x(hull, r, f, k, y_mid, ChainSide::S2));
    }
    SweepResult out;
    out.best_orientation = alpha;
    if (right <= left) {
        Point2 mid = f.from_frame({0.5 * (left + right), y_mid});
        out.status = SweepResult::Status::Point;
        out.segment = Segment(mid, mid);
        out.length = 0.0;
        return out;
    }
    out.status = SweepResult::Status::Segment;
    out.segment = Segment(f.from_frame({right, y_mid}), f.from_frame({left, y_mid}));
    out.length = right - left;
    return out;
}

}  // namespace

SweepResult sweep_shortest_segment(const std::vector<Point2>& points, double r,
                                   const SweepOptions& options) {
    if (points.empty()) throw std::invalid_argument("sweep_shortest_segment: no points");
    if (r <= 0.0) throw std::invalid_argument("sweep_shortest_segment: r must be positive");
    for (const Point2& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("sweep_shortest_segment: non-finite coordinate");
    }

    SweepResult out;
    Circle sed = smallest_enclosing_disk(points);
    if (sed.radius <= r) {
        out.status = SweepResult::Status::Point;
        out.segment = Segment(sed.center, sed.center);
        out.length = 0.0;
        return out;
    }
    ConvexHull hull = convex_hull(points);
    if (hull.size() <= 2) {
        // Collinear input: the segment lies on the line, trimmed by r at
        // both ends.
        Vec2 d = (hull.vertices[1] - hull.vertices[0]).normalized();
        double diam = distance(hull.vertices[0], hull.vertices[1]);
        out.status = SweepResult::Status::Segment;
        out.segment = Segment(hull.vertices[0] + d * r, hull.vertices[1] - d * r);
        out.length = diam - 2.0 * r;
        out.best_orientation = orientation_of(d);
        return out;
    }
    CaliperResult cal = calipers(hull);
    if (cal.width > 2.0 * r) {
        out.status = SweepResult::Status::None;
        return out;
    }

    std::string last_error;
    for (int attempt = 0; attempt <= options.perturb_retries; ++attempt) {
        double rot = 0.0;
        if (options.perturb || attempt > 0) {
            double base = 1.3e-8 * (1.0 + static_cast<double>(options.seed % 5));
            rot = std::min(base * (1.0 + 2.0 * attempt), 9.9e-8);
        }
        try {
            std::vector<Point2> rotated(points.size());
            for (size_t i = 0; i < points.size(); ++i) rotated[i] = rotate_point(points[i], rot);
            ConvexHull rhull = convex_hull(rotated);
            auto feas = feasible_orientation(rhull, r);
            if (!feas) throw std::logic_error("feasibility lost under perturbation");
            SweepEngine engine(rhull, r, feas->alpha, options.record_events);
            engine.run();

            out.status = SweepResult::Status::Segment;
            Segment seg = engine.best_segment();
            out.segment = Segment(rotate_point(seg.a, -rot), rotate_point(seg.b, -rot));
            out.length = engine.best_length();
            out.best_orientation = OrientationAngle(engine.best_alpha() - rot);
            out.trace = std::move(engine.trace());
            for (EventRecord& e : out.trace.events)
                e.orientation = OrientationAngle(e.orientation - rot).alpha;
            return out;
        } catch (const std::logic_error& err) {
            last_error = err.what();
        }
    }
    if (cal.width >= 2.0 * r - 1e-7 * (1.0 + r)) {
        // The feasible set of orientations is a single point (width == 2r up
        // to rounding); answer directly on the critical line.
        return critical_orientation_solution(hull, r, cal.width_orientation);
    }
    throw std::logic_error("sweep_shortest_segment: all perturbation attempts failed: " +
                           last_error);
}

}  // namespace repseg

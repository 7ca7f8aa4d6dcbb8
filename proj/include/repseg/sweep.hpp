#pragma once

#include "repseg/chains.hpp"
#include "repseg/disk_index.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace repseg {

// Certificate slots: one per maintained role. Types 1 and 2 have one slot
// per chain / tangent, type 3 a single slot, and each chain endpoint carries
// exactly one certificate of type 4 or 5.
enum class CertSlot {
    Type1S1,
    Type1S2,
    Type2Tau1,
    Type2Tau2,
    Type3,
    EndS1Top,
    EndS1Bottom,
    EndS2Top,
    EndS2Bottom,
    Count
};

struct Certificate {
    int kind = 0;  // 1..5
    CertSlot slot = CertSlot::Type3;
    double violation_alpha = 0.0;  // absolute sweep parameter
    // Kind-specific payload.
    int hit_circle = -1;   // hull index of the circle involved
    Point2 witness;        // crossing point / vertex hit
    int transition = 0;    // kind 1: encoded minimizer transition
};

struct EventRecord {
    int kind = 0;
    double orientation = 0.0;  // [0, pi), reported in input coordinates
    bool internal = false;
    CertSlot slot = CertSlot::Type3;
};

struct SweepTrace {
    std::vector<EventRecord> events;
    std::array<long, 6> counts{};  // per kind, 1-indexed
    long internal_count = 0;
    long total = 0;

    void record(const EventRecord& e, bool keep_events) {
        if (keep_events) events.push_back(e);
        ++counts[e.kind];
        if (e.internal) ++internal_count;
        ++total;
    }
};

struct SweepOptions {
    bool record_events = false;   // keep the full per-event list in the trace
    int perturb_retries = 4;
    bool perturb = true;
    std::uint64_t seed = 0x51ab3e5u;
};

struct SweepResult {
    enum class Status { Segment, Point, None } status = Status::None;
    std::optional<Segment> segment;
    double length = 0.0;
    OrientationAngle best_orientation;
    SweepTrace trace;
};

// The rotational sweep over a pi range of orientations. Operates on a fixed
// hull (at least 3 vertices); callers handle degenerate inputs.
class SweepEngine {
  public:
    SweepEngine(ConvexHull hull, double r, double alpha_start, bool keep_events);

    // Advances to the next event and processes it. Returns false once the
    // sweep interval is exhausted (best-so-far includes the final stretch).
    bool step();
    void run();

    double alpha() const { return alpha_; }
    double alpha_end() const { return alpha_end_; }
    bool solution_exists() const { return exists_; }
    const ConvexHull& hull() const { return hull_; }
    const ChainSkeleton& s1() const { return s1_; }
    const ChainSkeleton& s2() const { return s2_; }
    int tau1_owner() const { return owner1_; }
    int tau2_owner() const { return owner2_; }
    double strip_top() const;
    double strip_bottom() const;
    const SweepTrace& trace() const { return trace_; }
    SweepTrace& trace() { return trace_; }

    double best_length() const { return best_len_; }
    const Segment& best_segment() const { return best_seg_; }
    double best_alpha() const { return best_alpha_; }

    // Earliest pending certificate violation, if any.
    std::optional<double> next_violation() const;
    double radius() const { return r_; }
    bool has_certificate(CertSlot slot) const {
        return certs_[static_cast<size_t>(slot)].has_value();
    }
    const std::optional<Certificate>& certificate(CertSlot slot) const {
        return certs_[static_cast<size_t>(slot)];
    }

    // Current optimum from the maintained minimizer state.
    Segment current_segment() const;
    ChainOptimum current_optimum() const;
    // Evaluates the maintained motion law at an arbitrary sweep parameter;
    // meaningful within the current inter-event interval.
    ChainOptimum optimum_at(double alpha_abs) const;

    // Hook invoked after every processed event (used by consistency tests).
    std::function<void(const SweepEngine&, const EventRecord&)> audit;

  private:
    struct MinimizerState {
        MinimizerKind kind = MinimizerKind::ArcArc;
        int s1_arc = 0, s2_arc = 0;
        int s1_vertex = -1, s2_vertex = -1;
    };

    Frame frame_at(double a) const { return Frame(a); }
    double y_of(int k, double a) const { return dir(a).perp().dot(hull_.vertices[k]); }
    double strip_top_at(double a) const { return y_of(owner1_, a) + r_; }
    double strip_bottom_at(double a) const { return y_of(owner2_, a) - r_; }

    void rebuild_solution(bool via_restart);
    void derive_minimizer_state(double probe = 1e-9);
    void settle_minimizer_state();
    void refresh_type1_certs();
    void refresh_type2_certs();
    void refresh_type3_cert();
    void refresh_end_cert(CertSlot slot);
    void refresh_all_end_certs();

    std::optional<Certificate> make_type1_cert(CertSlot slot) const;
    std::optional<Certificate> make_end_cert(CertSlot slot) const;

    void handle_type1(const Certificate& c);
    void handle_type2(const Certificate& c, CertSlot slot);
    void handle_type3();
    bool handle_end(const Certificate& c, CertSlot slot, EventRecord& rec);

    void update_best_over(double a_lo, double a_hi);
    double span_at(double a, const MinimizerState& st, double* y_out = nullptr,
                   double* x1_out = nullptr, double* x2_out = nullptr) const;

    // slot/range helpers for end certificates
    struct EndContext {
        ChainSide side;
        bool top;            // tau1 end or tau2 end
        int owner;           // hull index of the strip-line owner
        int end_arc_support; // support of the arc at this end
        double line_sign;    // +1: tau1 line, -1: tau2 line
    };
    EndContext end_context(CertSlot slot) const;
    ChainSkeleton& chain_of(CertSlot slot);
    const ChainSkeleton& chain_of(CertSlot slot) const;

    ConvexHull hull_;
    double r_;
    int h_;
    double alpha_;
    double alpha_end_;
    bool keep_events_;

    int owner1_ = 0, owner2_ = 0;
    bool exists_ = false;
    ChainSkeleton s1_, s2_;
    MinimizerState state_;
    std::array<std::optional<Certificate>, static_cast<size_t>(CertSlot::Count)> certs_;
    std::array<int, static_cast<size_t>(CertSlot::Count)> range_anchor_;

    std::optional<DiskIndex> index_;

    double best_len_ = 0.0;
    Segment best_seg_;
    double best_alpha_ = 0.0;
    SweepTrace trace_;
    long event_budget_ = 0;
};

// Top-level solver: handles degenerate inputs, applies the seeded
// perturbation rotation, runs the sweep and maps results back.
SweepResult sweep_shortest_segment(const std::vector<Point2>& points, double r,
                                   const SweepOptions& options = {});

}  // namespace repseg

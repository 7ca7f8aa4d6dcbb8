#include "repseg/disk_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repseg {

namespace {

constexpr double kAngTol = 1e-12;

struct ArcInterval {
    bool empty = false;
    bool full = false;
    double enter = 0.0, exit = 0.0;  // inside the disk from enter to exit, CCW
};

ArcInterval circle_in_disk_interval(const Circle& query, const Circle& disk) {
    ArcInterval out;
    Vec2 g = query.center - disk.center;
    double d = g.norm();
    if (d < 1e-14) {
        out.full = query.radius <= disk.radius;
        out.empty = !out.full;
        return out;
    }
    double q = (disk.radius * disk.radius - d * d - query.radius * query.radius) /
               (2.0 * query.radius * d);
    if (q >= 1.0) {
        out.full = true;
        return out;
    }
    if (q <= -1.0) {
        out.empty = true;
        return out;
    }
    double phi = std::atan2(g.y, g.x) + kPi;
    double beta = std::acos(-q);
    out.enter = phi - beta;
    out.exit = phi + beta;
    return out;
}

struct ArcPiece {
    int owner;
    Point2 start_point;
    Point2 end_point;
    bool start_cut;
    bool end_cut;
    double sort_key;  // arc index plus offset fraction, for ordering
};

// region <- region `intersect` disk(circles[new_owner]).
void clip_region(CommonIntersectionBoundary& region, const std::vector<Circle>& circles,
                 int new_owner) {
    if (region.empty_region) return;
    const Circle& D = circles[new_owner];

    if (region.full_circle()) {
        const Circle& c0 = circles[region.owners[0]];
        ArcInterval iv = circle_in_disk_interval(c0, D);
        if (iv.full) return;
        if (iv.empty) {
            region = CommonIntersectionBoundary{};
            region.empty_region = true;
            return;
        }
        int o0 = region.owners[0];
        region.owners = {o0, new_owner};
        region.vertices = {c0.at(iv.enter), c0.at(iv.exit)};
        return;
    }

    int m = static_cast<int>(region.owners.size());
    std::vector<ArcPiece> pieces;
    bool any_cut = false;
    for (int t = 0; t < m; ++t) {
        const Circle& oc = circles[region.owners[t]];
        const Point2& va = region.vertices[t];
        const Point2& vb = region.vertices[(t + 1) % m];
        double s = std::atan2(va.y - oc.center.y, va.x - oc.center.x);
        double e = std::atan2(vb.y - oc.center.y, vb.x - oc.center.x);
        double len = wrap_angle(e - s);
        ArcInterval iv = circle_in_disk_interval(oc, D);
        if (iv.full) {
            pieces.push_back({region.owners[t], va, vb, false, false, static_cast<double>(t)});
            continue;
        }
        if (iv.empty) {
            any_cut = true;
            continue;
        }
        double u = wrap_angle(iv.enter - s);
        double blen = wrap_angle(iv.exit - iv.enter);
        struct Ov {
            double lo, hi;
        };
        std::vector<Ov> ovs;
        for (double shift : {0.0, -2.0 * kPi}) {
            double lo = std::max(0.0, u + shift);
            double hi = std::min(len, u + shift + blen);
            if (hi - lo > kAngTol) ovs.push_back({lo, hi});
        }
        if (ovs.size() == 2 && ovs[0].lo > ovs[1].lo) std::swap(ovs[0], ovs[1]);
        if (ovs.empty()) any_cut = true;
        for (const Ov& ov : ovs) {
            bool cut_lo = ov.lo > kAngTol;
            bool cut_hi = ov.hi < len - kAngTol;
            any_cut = any_cut || cut_lo || cut_hi;
            ArcPiece p;
            p.owner = region.owners[t];
            p.start_cut = cut_lo;
            p.end_cut = cut_hi;
            p.start_point = cut_lo ? oc.at(s + ov.lo) : va;
            p.end_point = cut_hi ? oc.at(s + ov.hi) : vb;
            p.sort_key = t + ov.lo / (2.0 * kPi + 1.0);
            pieces.push_back(p);
        }
    }
    if (pieces.empty()) {
        region = CommonIntersectionBoundary{};
        region.empty_region = true;
        return;
    }
    if (!any_cut) return;  // region lies inside the new disk

    std::vector<int> new_owners;
    std::vector<Point2> new_vertices;
    int np = static_cast<int>(pieces.size());
    for (int k = 0; k < np; ++k) {
        new_owners.push_back(pieces[k].owner);
        new_vertices.push_back(pieces[k].start_point);
        const ArcPiece& nxt = pieces[(k + 1) % np];
        if (pieces[k].end_cut || nxt.start_cut) {
            new_owners.push_back(new_owner);
            new_vertices.push_back(pieces[k].end_point);
        }
    }
    region.owners = std::move(new_owners);
    region.vertices = std::move(new_vertices);
}

// Interval of the line (by parameter along line.direction()) inside a disk.
struct LineInterval {
    bool ok;
    double lo, hi;
};

LineInterval line_in_disk_interval(const Line& line, const Circle& c, const Point2& p0,
                                   const Vec2& d) {
    double dist = line.signed_distance(c.center);
    double h2 = c.radius * c.radius - dist * dist;
    // Tangency tolerance: the restart queries touch the strip-owner disks
    // exactly on their boundary.
    if (h2 < -1e-12 * (1.0 + c.radius * c.radius)) return {false, 0.0, 0.0};
    double mid = d.dot(c.center - p0);
    double h = h2 <= 0.0 ? 0.0 : std::sqrt(h2);
    return {true, mid - h, mid + h};
}

}  // namespace

std::vector<std::pair<int, CircularArc>> CommonIntersectionBoundary::arcs(
    const std::vector<Circle>& circles) const {
    std::vector<std::pair<int, CircularArc>> out;
    if (empty_region) return out;
    if (full_circle()) {
        CircularArc a;
        a.circle = circles[owners[0]];
        a.full_circle = true;
        a.winding = Winding::CounterClockwise;
        out.push_back({owners[0], a});
        return out;
    }
    int m = static_cast<int>(owners.size());
    for (int t = 0; t < m; ++t) {
        const Circle& c = circles[owners[t]];
        const Point2& va = vertices[t];
        const Point2& vb = vertices[(t + 1) % m];
        CircularArc a;
        a.circle = c;
        a.start_angle = wrap_angle(std::atan2(va.y - c.center.y, va.x - c.center.x));
        a.end_angle = wrap_angle(std::atan2(vb.y - c.center.y, vb.x - c.center.x));
        a.winding = Winding::CounterClockwise;
        out.push_back({owners[t], a});
    }
    return out;
}

CommonIntersectionBoundary common_intersection(const std::vector<Circle>& disks) {
    if (disks.empty()) throw std::invalid_argument("common_intersection: no disks");
    CommonIntersectionBoundary region;
    region.owners = {0};
    for (size_t k = 1; k < disks.size(); ++k) {
        clip_region(region, disks, static_cast<int>(k));
        if (region.empty_region) break;
    }
    return region;
}

DiskIndex::DiskIndex(const ConvexHull& hull, double r) : centers_(hull.vertices), r_(r) {
    if (r <= 0.0) throw std::invalid_argument("DiskIndex: r must be positive");
    if (hull.size() < 3) throw std::invalid_argument("DiskIndex: hull must have >= 3 vertices");
    int h = hull.size();
    run_of_.assign(h, -1);

    auto exterior_angle = [&](int v) {
        Vec2 e1 = hull.vertices[v] - hull.cyclic(v - 1);
        Vec2 e2 = hull.cyclic(v + 1) - hull.vertices[v];
        double c = e1.normalized().dot(e2.normalized());
        return std::acos(std::clamp(c, -1.0, 1.0));
    };

    int s = 0;
    while (s < h) {
        int t = s;
        double turning = 0.0;
        while (t + 1 < h) {
            double next_turning = turning + (t > s ? exterior_angle(t) : 0.0);
            if (next_turning > kPi / 2.0) break;
            if (distance(centers_[s], centers_[t + 1]) > r) break;
            turning = next_turning;
            ++t;
        }
        Run run;
        run.start = s;
        run.length = t - s + 1;
        for (int k = s; k <= t; ++k) run_of_[k] = static_cast<int>(runs_.size());
        runs_.push_back(run);
        s = t + 1;
    }
    for (Run& run : runs_) {
        run.root = build_node(run.start, run.start + run.length - 1);
        if (nodes_[run.root].boundary.empty_region)
            throw std::logic_error("DiskIndex: run with empty common intersection");
    }
}

int DiskIndex::build_node(int lo, int hi) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[id].lo = lo;
    nodes_[id].hi = hi;
    if (lo == hi) {
        nodes_[id].boundary.owners = {lo};
        return id;
    }
    int mid = lo + (hi - lo) / 2;
    int l = build_node(lo, mid);
    int rgt = build_node(mid + 1, hi);
    nodes_[id].left = l;
    nodes_[id].right = rgt;

    std::vector<Circle> circles(centers_.size());
    for (size_t k = 0; k < centers_.size(); ++k) circles[k] = Circle(centers_[k], r_);
    CommonIntersectionBoundary b = nodes_[l].boundary;
    for (int k = mid + 1; k <= hi && !b.empty_region; ++k) clip_region(b, circles, k);
    nodes_[id].boundary = std::move(b);
    return id;
}

std::vector<int> DiskIndex::cover(int lo, int hi) const {
    std::vector<int> out;
    int run_a = run_of_[lo], run_b = run_of_[hi];
    for (int rid = run_a; rid <= run_b; ++rid) {
        const Run& run = runs_[rid];
        int a = std::max(lo, run.start);
        int b = std::min(hi, run.start + run.length - 1);
        // Canonical node cover within the run's tree, in left-to-right order.
        auto rec = [&](auto&& self, int nid) -> void {
            const Node& nd = nodes_[nid];
            if (a <= nd.lo && nd.hi <= b) {
                out.push_back(nid);
                return;
            }
            if (nd.left < 0) return;
            if (a <= nodes_[nd.left].hi) self(self, nd.left);
            if (b >= nodes_[nd.right].lo) self(self, nd.right);
        };
        rec(rec, run.root);
    }
    return out;
}

std::optional<CircularQueryHit> DiskIndex::circular_ray_query(int i, int j, const Circle& c,
                                                              const Point2& q, Winding winding,
                                                              QueryStats* stats) const {
    int h = hull_size();
    if (i < 0 || i >= h || j < 0 || j >= h)
        throw std::invalid_argument("circular_ray_query: bad range");
    // Cyclic positions i, i+1, ..., j (inclusive).
    int len = (j - i + h) % h + 1;

    // Far-point prefilter: skip a prefix of the range that lies farther than
    // 2r from the query circle center (those disks cannot be hit).
    auto center_at = [&](int pos) { return centers_[(i + pos) % h]; };
    int start_pos = 0;
    if (distance(center_at(0), c.center) > 2.0 * r_) {
        int lo = 0, hi = len - 1, first = len;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (distance(center_at(mid), c.center) <= 2.0 * r_) {
                first = mid;
                hi = mid - 1;
            } else {
                lo = mid + 1;
            }
        }
        while (first > 0 && distance(center_at(first - 1), c.center) <= 2.0 * r_) --first;
        // The binary search assumes distances decrease toward j; verify the
        // trimmed prefix really is out of reach and keep it otherwise.
        for (int pos = 0; pos < first; ++pos) {
            if (distance(center_at(pos), c.center) <= 2.0 * r_) {
                first = 0;
                break;
            }
        }
        start_pos = first;
    }
    if (start_pos >= len) return std::nullopt;

    int qi = (i + start_pos) % h;
    std::vector<int> node_ids;
    std::vector<int> runs_seen;
    if (qi <= j) {
        node_ids = cover(qi, j);
    } else {
        node_ids = cover(qi, h - 1);
        std::vector<int> part2 = cover(0, j);
        node_ids.insert(node_ids.end(), part2.begin(), part2.end());
    }

    double theta_q = std::atan2(q.y - c.center.y, q.x - c.center.x);
    std::optional<CircularQueryHit> best;
    for (int nid : node_ids) {
        const Node& nd = nodes_[nid];
        if (run_of_[nd.lo] != (runs_seen.empty() ? -1 : runs_seen.back()))
            runs_seen.push_back(run_of_[nd.lo]);
        for (int owner : nd.boundary.owners) {
            ArcInterval iv = circle_in_disk_interval(c, Circle(centers_[owner], r_));
            if (iv.full || iv.empty) continue;
            double boundary = winding == Winding::CounterClockwise ? iv.exit : iv.enter;
            double travel = winding == Winding::CounterClockwise
                                ? wrap_angle(iv.exit - theta_q)
                                : wrap_angle(theta_q - iv.enter);
            if (!best || travel < best->travel ||
                (travel == best->travel && owner < best->owner)) {
                best = CircularQueryHit{c.at(boundary), owner, travel};
            }
        }
    }
    if (stats) {
        stats->runs_touched = static_cast<int>(runs_seen.size());
        stats->nodes_touched = static_cast<int>(node_ids.size());
    }
    return best;
}

LineQueryResult DiskIndex::line_query(int i, int j, const Line& line, QueryStats* stats) const {
    int h = hull_size();
    if (i < 0 || i >= h || j < 0 || j >= h) throw std::invalid_argument("line_query: bad range");
    std::vector<int> node_ids;
    if (i <= j) {
        node_ids = cover(i, j);
    } else {
        node_ids = cover(i, h - 1);
        std::vector<int> part2 = cover(0, j);
        node_ids.insert(node_ids.end(), part2.begin(), part2.end());
    }
    if (stats) {
        stats->nodes_touched = static_cast<int>(node_ids.size());
        int prev_run = -1;
        stats->runs_touched = 0;
        for (int nid : node_ids) {
            if (run_of_[nodes_[nid].lo] != prev_run) {
                prev_run = run_of_[nodes_[nid].lo];
                ++stats->runs_touched;
            }
        }
    }

    Point2 p0 = line.normal * line.offset;
    Vec2 d = line.direction();

    struct Walk {
        double maxlo = -std::numeric_limits<double>::infinity();
        double minhi = std::numeric_limits<double>::infinity();
        int lo_owner = -1, hi_owner = -1;
        bool done = false;
        LineQueryResult result;
    } w;

    // Merge one disk exactly like the scan oracle.
    auto merge_disk = [&](int owner) {
        LineInterval iv = line_in_disk_interval(line, Circle(centers_[owner], r_), p0, d);
        if (!iv.ok) {
            if (w.lo_owner < 0) {
                w.result.kind = LineQueryResult::Kind::None;
            } else {
                w.result.kind = LineQueryResult::Kind::Candidate;
                w.result.left = p0 + d * w.maxlo;
                w.result.left_owner = w.lo_owner;
            }
            w.done = true;
            return;
        }
        double nlo = w.maxlo, nhi = w.minhi;
        int nlo_o = w.lo_owner, nhi_o = w.hi_owner;
        if (iv.lo > nlo) {
            nlo = iv.lo;
            nlo_o = owner;
        }
        if (iv.hi < nhi) {
            nhi = iv.hi;
            nhi_o = owner;
        }
        if (nlo > nhi) {
            w.result.kind = LineQueryResult::Kind::Candidate;
            w.result.left = p0 + d * nlo;
            w.result.left_owner = nlo_o;
            w.done = true;
            return;
        }
        w.maxlo = nlo;
        w.minhi = nhi;
        w.lo_owner = nlo_o;
        w.hi_owner = nhi_o;
    };

    // Process a node right-to-left; descend when the merge would empty.
    auto walk_node = [&](auto&& self, int nid) -> void {
        if (w.done) return;
        const Node& nd = nodes_[nid];
        if (nd.left < 0) {
            merge_disk(nd.lo);
            return;
        }
        // Node aggregate over its boundary owners.
        double agg_lo = -std::numeric_limits<double>::infinity();
        double agg_hi = std::numeric_limits<double>::infinity();
        int agg_lo_o = -1, agg_hi_o = -1;
        bool missing = false;
        for (int owner : nd.boundary.owners) {
            LineInterval iv = line_in_disk_interval(line, Circle(centers_[owner], r_), p0, d);
            if (!iv.ok) {
                missing = true;
                break;
            }
            if (iv.lo > agg_lo) {
                agg_lo = iv.lo;
                agg_lo_o = owner;
            }
            if (iv.hi < agg_hi) {
                agg_hi = iv.hi;
                agg_hi_o = owner;
            }
        }
        bool fits = !missing && agg_lo <= agg_hi && std::max(agg_lo, w.maxlo) <= std::min(agg_hi, w.minhi);
        if (fits) {
            if (agg_lo > w.maxlo) {
                w.maxlo = agg_lo;
                w.lo_owner = agg_lo_o;
            }
            if (agg_hi < w.minhi) {
                w.minhi = agg_hi;
                w.hi_owner = agg_hi_o;
            }
            return;
        }
        // The answer is inside this subtree: resolve disk by disk from the
        // right.
        self(self, nd.right);
        if (!w.done) self(self, nd.left);
    };

    for (auto it = node_ids.rbegin(); it != node_ids.rend() && !w.done; ++it)
        walk_node(walk_node, *it);
    if (!w.done) {
        if (w.lo_owner < 0) {
            w.result.kind = LineQueryResult::Kind::None;
        } else {
            w.result.kind = LineQueryResult::Kind::Both;
            w.result.left = p0 + d * w.maxlo;
            w.result.right = p0 + d * w.minhi;
            w.result.left_owner = w.lo_owner;
            w.result.right_owner = w.hi_owner;
        }
    }
    return w.result;
}

bool DiskIndex::point_in_range_intersection(int i, int j, const Point2& p, double eps) const {
    int h = hull_size();
    std::vector<int> node_ids;
    if (i <= j) {
        node_ids = cover(i, j);
    } else {
        node_ids = cover(i, h - 1);
        std::vector<int> part2 = cover(0, j);
        node_ids.insert(node_ids.end(), part2.begin(), part2.end());
    }
    for (int nid : node_ids) {
        for (int owner : nodes_[nid].boundary.owners) {
            if (distance(p, centers_[owner]) > r_ + eps) return false;
        }
    }
    return true;
}

namespace {

// One hippodrome cap on the critical line. sign=+1 computes the cap that
// bounds the solution on the +u side (the S1 seed), sign=-1 the other.
CapSeed cap_on_line(const DiskIndex& index, const ConvexHull& hull, double r, const Frame& f,
                    double y_mid, double sign) {
    int h = hull.size();
    auto x_of = [&](int k) { return sign * f.u.dot(hull.vertices[k]); };

    int phat = 0;
    for (int k = 1; k < h; ++k)
        if (x_of(k) > x_of(phat)) phat = k;
    Point2 cap_circle_center =
        f.from_frame({sign * x_of(phat), y_mid});  // on ell, under ell1
    Circle gate(cap_circle_center, r);

    // Contiguous arc of hull vertices inside the gate circle, around phat.
    auto inside = [&](int k) { return distance(hull.cyclic(k), cap_circle_center) <= r; };
    int lo = phat, hi = phat;
    while (hi - lo + 1 < h && inside(hi + 1)) ++hi;
    while (hi - lo + 1 < h && inside(lo - 1)) --lo;
    // Extend to everything right of ell2 (x' >= x'(phat) - r).
    auto right_of_l2 = [&](int k) {
        return sign * f.u.dot(hull.cyclic(k)) >= x_of(phat) - r;
    };
    int blo = lo, bhi = hi;
    while (bhi - blo + 1 < h && right_of_l2(bhi + 1)) ++bhi;
    while (bhi - blo + 1 < h && right_of_l2(blo - 1)) --blo;

    // Query line oriented so that increasing parameter runs toward -sign*u:
    // then the "left" endpoint (max of interval left ends) is the cap.
    Line query_line(f.n * (-sign), -sign * y_mid);

    CapSeed best;
    double best_x = -std::numeric_limits<double>::infinity();
    int runs = 0;
    auto consider = [&](int a, int b) {
        if (a > b) return;
        QueryStats st;
        LineQueryResult res = index.line_query(hull.cyclic_index(a), hull.cyclic_index(b),
                                               query_line, &st);
        runs += st.runs_touched;
        if (res.kind == LineQueryResult::Kind::None) return;
        double x = sign * f.u.dot(res.left);
        if (x > best_x) {
            best_x = x;
            best.cap_center = res.left;
            best.witness = res.left_owner;
        }
    };
    consider(lo, hi);
    consider(blo, lo - 1);
    consider(hi + 1, bhi);
    best.runs_touched = runs;
    return best;
}

}  // namespace

std::pair<CapSeed, CapSeed> restart_caps_in_frame(const DiskIndex& index, const ConvexHull& hull,
                                                  double r, const Frame& f) {
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const Point2& p : hull.vertices) {
        double y = f.n.dot(p);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    double y_mid = 0.5 * (ymin + ymax);
    CapSeed right = cap_on_line(index, hull, r, f, y_mid, +1.0);
    CapSeed left = cap_on_line(index, hull, r, f, y_mid, -1.0);
    return {right, left};
}

std::pair<CapSeed, CapSeed> restart_solution_after_type3(const DiskIndex& index,
                                                         const ConvexHull& hull, double r,
                                                         OrientationAngle alpha) {
    return restart_caps_in_frame(index, hull, r, Frame(alpha.alpha));
}

}  // namespace repseg

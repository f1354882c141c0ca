#include "mcdline/srsa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <string>

#include "mcdline/errors.hpp"
#include "mcdline/steiner_dw.hpp"

namespace mcd {

namespace {
constexpr double kEps = 1e-6;

struct VSeg {
    double x, ylo, yhi;
    double entry = std::numeric_limits<double>::infinity();
};
struct HSeg {
    double y, xlo, xhi;
    bool reach = false;
};
}  // namespace

double segments_cost(std::span<const Segment> segments) {
    double c = 0.0;
    for (const Segment& s : segments) c += s.length;
    return c;
}

ContinuousReport check_segments(std::span<const Point> points, std::span<const Segment> segments,
                                double root_x) {
    std::vector<VSeg> vs;
    std::vector<HSeg> hs;
    for (const Segment& s : segments) {
        if (s.length <= 0) continue;
        if (s.orientation == Orientation::Vertical)
            vs.push_back({s.x0, s.y0, s.y0 + s.length});
        else
            hs.push_back({s.y0, s.x0, s.x0 + s.length, false});
    }

    std::deque<std::pair<bool, std::size_t>> work;  // (is_vertical, index)
    auto reach_h = [&](std::size_t i) {
        if (!hs[i].reach) {
            hs[i].reach = true;
            work.emplace_back(false, i);
        }
    };
    auto enter_v = [&](std::size_t i, double y) {
        y = std::max(y, vs[i].ylo);
        if (y < vs[i].entry - kEps) {
            vs[i].entry = y;
            work.emplace_back(true, i);
        }
    };

    // seeds at the root (root_x, 0)
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (std::abs(hs[i].y) <= kEps && hs[i].xlo - kEps <= root_x && root_x <= hs[i].xhi + kEps)
            reach_h(i);
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (std::abs(vs[i].x - root_x) <= kEps && vs[i].ylo <= kEps) enter_v(i, 0.0);

    while (!work.empty()) {
        auto [vert, i] = work.front();
        work.pop_front();
        if (vert) {
            const VSeg v = vs[i];
            for (std::size_t j = 0; j < hs.size(); ++j)
                if (!hs[j].reach && hs[j].xlo - kEps <= v.x && v.x <= hs[j].xhi + kEps &&
                    hs[j].y >= v.entry - kEps && hs[j].y <= v.yhi + kEps)
                    reach_h(j);
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (j != i && std::abs(vs[j].x - v.x) <= kEps && v.entry <= vs[j].yhi + kEps &&
                    vs[j].ylo <= v.yhi + kEps)
                    enter_v(j, v.entry);
        } else {
            const HSeg h = hs[i];
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (h.xlo - kEps <= vs[j].x && vs[j].x <= h.xhi + kEps &&
                    vs[j].ylo - kEps <= h.y && h.y <= vs[j].yhi + kEps)
                    enter_v(j, h.y);
            for (std::size_t j = 0; j < hs.size(); ++j)
                if (!hs[j].reach && std::abs(hs[j].y - h.y) <= kEps &&
                    hs[j].xlo - kEps <= h.xhi && h.xlo - kEps <= hs[j].xhi)
                    reach_h(j);
        }
    }

    ContinuousReport rep;
    rep.total_cost = segments_cost(segments);
    rep.feasible = true;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const Point& q = points[p];
        bool ok = std::abs(q.x - root_x) <= kEps && std::abs(q.y) <= kEps;
        for (std::size_t i = 0; !ok && i < hs.size(); ++i)
            ok = hs[i].reach && std::abs(hs[i].y - q.y) <= kEps && hs[i].xlo - kEps <= q.x &&
                 q.x <= hs[i].xhi + kEps;
        for (std::size_t i = 0; !ok && i < vs.size(); ++i)
            ok = std::abs(vs[i].x - q.x) <= kEps && vs[i].entry - kEps <= q.y &&
                 q.y <= vs[i].yhi + kEps;
        if (!ok) {
            rep.feasible = false;
            rep.first_unreachable = p;
            break;
        }
    }
    return rep;
}

namespace {

// Collinear merge; keeps the cost honest when connectors overlap paths.
std::vector<Segment> merge_segments(std::vector<Segment> in) {
    std::vector<Segment> out;
    auto merge_axis = [&](Orientation o) {
        std::map<double, std::vector<std::pair<double, double>>> lanes;  // fixed coord -> spans
        for (const Segment& s : in) {
            if (s.orientation != o || s.length <= 0) continue;
            double fixed = o == Orientation::Vertical ? s.x0 : s.y0;
            double lo = o == Orientation::Vertical ? s.y0 : s.x0;
            lanes[fixed].emplace_back(lo, lo + s.length);
        }
        for (auto& [fixed, spans] : lanes) {
            std::sort(spans.begin(), spans.end());
            double lo = spans[0].first, hi = spans[0].second;
            auto emit = [&] {
                if (o == Orientation::Vertical)
                    out.push_back({o, fixed, lo, hi - lo});
                else
                    out.push_back({o, lo, fixed, hi - lo});
            };
            for (std::size_t i = 1; i < spans.size(); ++i) {
                if (spans[i].first > hi + kEps) {
                    emit();
                    lo = spans[i].first;
                    hi = spans[i].second;
                } else {
                    hi = std::max(hi, spans[i].second);
                }
            }
            emit();
        }
    };
    merge_axis(Orientation::Horizontal);
    merge_axis(Orientation::Vertical);
    return out;
}

}  // namespace

OnRsaResult run_onrsa(std::span<const Point> points, AssertLevel level, double root_x) {
    OnRsaResult res;
    std::vector<Segment> raw;
    double phase_cost = 0.0;
    auto emit = [&](Segment s) {
        if (s.length <= kEps) return;
        raw.push_back(s);
        phase_cost += s.length;
    };

    std::int64_t n_guess = 4;
    double m_guess = 0.0;  // set when the first phase opens
    double y_base = 0.0, step = 0.0;
    Node origin_node = 1;
    std::unique_ptr<LineonEngine> engine;
    std::size_t cursor = 0;
    std::size_t phase_first = 0;
    Point last_anchor{root_x, 0.0};
    double x_max_seen = 0.0, y_prev = 0.0;

    auto close_phase = [&] {
        if (!engine) return;
        engine->finish();
        res.phases.push_back({n_guess, m_guess, y_base, phase_first, phase_cost});
        engine.reset();
        phase_cost = 0.0;
    };
    auto open_phase = [&](const Point& p, std::size_t index) {
        y_base = p.y;
        step = m_guess / static_cast<double>(n_guess);
        origin_node = std::clamp<Node>(
            static_cast<Node>(std::llround(last_anchor.x / step)), 1, n_guess);
        phase_first = index;
        // stitch the new phase root to the last reachable anchor
        emit({Orientation::Vertical, last_anchor.x, last_anchor.y, y_base - last_anchor.y});
        double ox = static_cast<double>(origin_node) * step;
        emit({Orientation::Horizontal, std::min(last_anchor.x, ox), y_base,
              std::abs(ox - last_anchor.x)});
        engine = std::make_unique<LineonEngine>(n_guess, origin_node, std::nullopt, level);
        cursor = 0;
    };

    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& p = points[i];
        if (p.x < 0 || p.y < 0) throw std::invalid_argument("onrsa: point outside the quadrant");
        if (p.y < y_prev) throw std::invalid_argument("onrsa: y coordinates must be non-decreasing");
        y_prev = p.y;
        x_max_seen = std::max(x_max_seen, p.x);
        std::int64_t n_seen = static_cast<std::int64_t>(i) + 1;

        if (std::abs(p.x - root_x) <= kEps && p.y <= kEps && !engine) continue;  // at the root

        bool reopen = false;
        if (!engine) {
            m_guess = 2.0 * (p.x > 0 ? p.x : (p.y > 0 ? p.y : 1.0));
            reopen = true;
        }
        double n4 = static_cast<double>(n_seen) * n_seen * n_seen * n_seen;
        if (n4 > static_cast<double>(n_guess)) {
            close_phase();
            n_guess = std::max(n_guess * n_guess, static_cast<std::int64_t>(n4));
            if (n_guess > kOnRsaMaxGuess)
                throw instance_too_large(
                    "onrsa: guess grid past " + std::to_string(kOnRsaMaxGuess) +
                    " nodes; the squaring schedule makes long streams impractical");
            reopen = true;
        }
        if (x_max_seen > m_guess) {
            close_phase();
            while (x_max_seen > m_guess) m_guess *= 2.0;
            reopen = true;
        }
        if (reopen) open_phase(p, i);

        // guess windows hold after maintenance
        if (level >= AssertLevel::Cheap &&
            (x_max_seen > m_guess || n_seen > n_guess))
            throw invariant_violation("onrsa: guess window violated after rescale");

        Node v = std::clamp<Node>(static_cast<Node>(std::llround(p.x / step)), 1, n_guess);
        Time t = static_cast<Time>(std::ceil((p.y - y_base) / step - kEps));
        t = std::max<Time>(t, engine->current_time());
        engine->add_request({v, t});

        for (const auto& [when, e] : engine->edges_since(cursor)) {
            (void)when;
            double ex = static_cast<double>(e.anchor.node) * step;
            double ey = y_base + static_cast<double>(e.anchor.time) * step;
            if (e.kind == EdgeKind::Horizontal)
                emit({Orientation::Horizontal, ex, ey, step});
            else
                emit({Orientation::Vertical, ex, ey, step});
        }
        cursor = engine->state().event_log.size();

        // connector from a segment that crosses the point's height
        const DeliveryRecord& del = engine->last_delivery();
        if (del.served_from_cache) {
            double xq = static_cast<double>(del.serving_node) * step;
            emit({Orientation::Horizontal, std::min(p.x, xq), p.y, std::abs(p.x - xq)});
        } else {
            const Point& src = points[phase_first + del.source_request];
            emit({Orientation::Vertical, src.x, src.y, p.y - src.y});
            emit({Orientation::Horizontal, std::min(p.x, src.x), p.y, std::abs(p.x - src.x)});
        }
        last_anchor = p;
    }
    close_phase();

    res.segments = merge_segments(std::move(raw));
    res.cost = segments_cost(res.segments);
    res.report = check_segments(points, res.segments, root_x);
    if (level >= AssertLevel::Cheap && !res.report.feasible)
        throw invariant_violation("onrsa: produced an infeasible segment set (point " +
                                  std::to_string(*res.report.first_unreachable) + ")");
    return res;
}

double srsa_exact(std::span<const Point> points, double root_x) {
    if (points.size() > kSrsaExactMaxPoints)
        throw instance_too_large("srsa_exact: more than " +
                                 std::to_string(kSrsaExactMaxPoints) + " points");
    std::vector<double> xs{root_x}, ys{0.0};
    for (const Point& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(xs);
    uniq(ys);
    const int X = static_cast<int>(xs.size()), Y = static_cast<int>(ys.size());
    auto id = [&](int ix, int iy) { return iy * X + ix; };

    SteinerArborescenceSolver<double> solver(X * Y);
    int payload = 0;
    for (int iy = 0; iy < Y; ++iy)
        for (int ix = 0; ix + 1 < X; ++ix) {
            double w = xs[ix + 1] - xs[ix];
            solver.add_edge(id(ix, iy), id(ix + 1, iy), w, payload);
            solver.add_edge(id(ix + 1, iy), id(ix, iy), w, payload);
            ++payload;
        }
    for (int iy = 0; iy + 1 < Y; ++iy)
        for (int ix = 0; ix < X; ++ix)
            solver.add_edge(id(ix, iy), id(ix, iy + 1), ys[iy + 1] - ys[iy], payload++);

    auto index_of = [](const std::vector<double>& v, double c) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), c) - v.begin());
    };
    std::vector<int> terminals;
    for (const Point& p : points) terminals.push_back(id(index_of(xs, p.x), index_of(ys, p.y)));
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    return solver.solve(id(index_of(xs, root_x), 0), terminals).cost;
}

namespace {

Node snap_col(double x, Node n) {
    // nearest column, ties to the lower node
    return std::clamp<Node>(static_cast<Node>(std::ceil(x - 0.5)), 1, n);
}
Time snap_time(double y) { return std::max<Time>(0, static_cast<Time>(std::ceil(y - 0.5))); }

}  // namespace

std::set<GridEdge> snap_to_grid(std::span<const Segment> segments, const Instance& inst) {
    std::set<GridEdge> edges;
    struct Snapped {
        bool vertical;
        Node col_lo, col_hi;  // horizontal: snapped node run; vertical: its column twice
        Time t_lo, t_hi;      // vertical: snapped time span; horizontal: its time twice
    };
    std::vector<Snapped> snapped(segments.size());

    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        if (s.orientation == Orientation::Vertical) {
            Node col = snap_col(s.x0, inst.n);
            Time t0 = std::max<Time>(0, static_cast<Time>(std::floor(s.y0 + kEps)));
            Time t1 = static_cast<Time>(std::ceil(s.y0 + s.length - kEps));
            for (Time t = t0; t < t1; ++t) edges.insert(arc_edge(col, t));
            snapped[i] = {true, col, col, t0, std::max(t0, t1)};
        } else {
            Time t = snap_time(s.y0);
            Node lo = snap_col(s.x0, inst.n), hi = snap_col(s.x0 + s.length, inst.n);
            for (Node v = lo; v < hi; ++v) edges.insert(horizontal_edge(v, t));
            snapped[i] = {false, lo, hi, t, t};
        }
    }

    // stitch snapped images of segments that touch in continuous space
    auto connect = [&](Replica a, Replica b) {
        if (a.time > b.time) std::swap(a, b);
        for (Time t = a.time; t < b.time; ++t) edges.insert(arc_edge(a.node, t));
        for (Node v = std::min(a.node, b.node); v < std::max(a.node, b.node); ++v)
            edges.insert(horizontal_edge(v, b.time));
    };
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& a = segments[i];
        for (std::size_t j = i + 1; j < segments.size(); ++j) {
            const Segment& b = segments[j];
            bool touch = std::max(a.x0, b.x0) <= std::min(a.x1(), b.x1()) + kEps &&
                         std::max(a.y0, b.y0) <= std::min(a.y1(), b.y1()) + kEps;
            if (!touch) continue;
            double cx = std::clamp(std::max(a.x0, b.x0), std::min(a.x0, a.x1()), a.x1());
            double cy = std::clamp(std::max(a.y0, b.y0), a.y0, a.y1());
            auto on_seg = [&](std::size_t k, double x, double y) -> Replica {
                const Snapped& s = snapped[k];
                if (s.vertical) return {s.col_lo, std::clamp(snap_time(y), s.t_lo, s.t_hi)};
                return {std::clamp(snap_col(x, inst.n), s.col_lo, s.col_hi), s.t_lo};
            };
            connect(on_seg(i, cx, cy), on_seg(j, cx, cy));
        }
    }
    return edges;
}

LineonpResult run_lineonp(const Instance& inst, AssertLevel level) {
    inst.validate();
    std::vector<Point> points;
    points.reserve(inst.requests.size());
    for (const Replica& r : inst.requests)
        points.push_back({static_cast<double>(r.node), static_cast<double>(r.time)});

    LineonResult plain = run_lineon(inst, std::nullopt, level);
    if (inst.requests.size() > kLineonpSnapMaxRequests) {
        // past the few-request regime the continuous detour cannot win
        LineonpResult res;
        res.cost_plain = plain.state.total_cost();
        res.cost_snapped = res.cost_plain;
        res.report = check_solution(inst, plain.state.edges);
        res.triangle = plain.state.triangle;
        return res;
    }

    OnRsaResult cont = run_onrsa(points, level, static_cast<double>(inst.origin));
    std::set<GridEdge> edges = snap_to_grid(cont.segments, inst);

    // repair: serve any still-unreachable request from its nearest reachable
    // replica, the same rule the offline algorithm uses
    for (;;) {
        SolutionReport rep = check_solution(inst, edges);
        if (rep.feasible) break;
        Replica target = inst.requests[*rep.first_unreachable];
        std::set<Replica> reachable{{inst.origin, 0}};
        for (const std::vector<Replica>& w : rep.witnesses)
            for (const Replica& r : w) reachable.insert(r);
        std::optional<Replica> best;
        Cost best_d = 0;
        for (const Replica& q : reachable) {
            std::optional<Cost> d = distance(q, target);
            if (!d) continue;
            if (!best || *d < best_d || (*d == best_d && q < *best)) {
                best = q;
                best_d = *d;
            }
        }
        for (const GridEdge& e : vertical_path(*best, {best->node, target.time}))
            edges.insert(e);
        for (const GridEdge& e : horizontal_path({best->node, target.time}, target))
            edges.insert(e);
    }

    LineonpResult res;
    res.cost_snapped = static_cast<Cost>(edges.size());
    res.cost_plain = plain.state.total_cost();
    res.used_snapped = res.cost_snapped <= res.cost_plain;
    res.report = check_solution(inst, res.used_snapped ? edges : plain.state.edges);
    res.triangle = plain.state.triangle;
    return res;
}

}  // namespace mcd

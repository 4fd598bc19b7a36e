#include "sewmatch/geometry.hpp"

#include <algorithm>
#include <limits>

namespace sewmatch {

Bbox bbox_of(std::span<const Vec2> points) {
    Bbox box{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
             {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()}};
    for (const auto& p : points) {
        box.lo.x = std::min(box.lo.x, p.x);
        box.lo.y = std::min(box.lo.y, p.y);
        box.hi.x = std::max(box.hi.x, p.x);
        box.hi.y = std::max(box.hi.y, p.y);
    }
    return box;
}

double signed_area(std::span<const Vec2> polygon) {
    double twice = 0.0;
    const size_t n = polygon.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

double angle_between(Vec2 a, Vec2 b) {
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

double interior_angle(Vec2 incoming_tangent, Vec2 outgoing_tangent) {
    const double turn = std::atan2(cross(incoming_tangent, outgoing_tangent),
                                   dot(incoming_tangent, outgoing_tangent));
    return 3.14159265358979323846 - turn;
}

Vec2 rel_to_world(Vec2 rel, Vec2 start, Vec2 end) {
    const Vec2 u = end - start;
    return start + rel.x * u + rel.y * perp(u);
}

Vec2 world_to_rel(Vec2 world, Vec2 start, Vec2 end) {
    const Vec2 u = end - start;
    const double len2 = dot(u, u);
    const Vec2 d = world - start;
    return {dot(d, u) / len2, dot(d, perp(u)) / len2};
}

Rigid2 rigid_from_segment(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const Vec2 da = normalized(a1 - a0);
    const Vec2 db = normalized(b1 - b0);
    Rigid2 r;
    r.c = dot(da, db);
    r.s = cross(da, db);
    const Vec2 ra0{r.c * a0.x - r.s * a0.y, r.s * a0.x + r.c * a0.y};
    r.t = b0 - ra0;
    return r;
}

}  // namespace sewmatch

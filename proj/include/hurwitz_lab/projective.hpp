#pragma once

#include <algorithm>
#include <array>
#include <vector>
#include <string>

#include "gf.hpp"

namespace hlab {

using gf::Fe;
using gf::Field;

namespace detail {

inline std::array<Fe, 3> normalize_last_nonzero(const Field& F, std::array<Fe, 3> c, const char* what) {
    for (int i = 2; i >= 0; --i) {
        if (c[i].code != 0) {
            const Fe s = F.inv(c[i]);
            for (auto& x : c) x = F.mul(x, s);
            return c;
        }
    }
    throw Error(Errc::PreconditionViolated, std::string(what) + " with all coordinates zero");
}

}  // namespace detail

/// A point of P^2, scaled so that its last nonzero coordinate is 1.
struct ProjPoint {
    std::array<Fe, 3> c{};

    static ProjPoint make(const Field& F, Fe x, Fe y, Fe z) {
        return ProjPoint{detail::normalize_last_nonzero(F, {x, y, z}, "point")};
    }
    static ProjPoint vertex(const Field& F, int i) {
        std::array<Fe, 3> c{F.zero(), F.zero(), F.zero()};
        c[i] = F.one();
        return ProjPoint{c};
    }
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
    bool has_zero_coordinate() const { return c[0].code == 0 || c[1].code == 0 || c[2].code == 0; }
};

/// A line aX + bY + cZ = 0, normalized like a point.
struct ProjLine {
    std::array<Fe, 3> c{};

    static ProjLine make(const Field& F, Fe a, Fe b, Fe cc) {
        return ProjLine{detail::normalize_last_nonzero(F, {a, b, cc}, "line")};
    }
    friend auto operator<=>(const ProjLine&, const ProjLine&) = default;
    bool contains(const Field& F, const ProjPoint& P) const {
        Fe s = F.zero();
        for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(c[i], P.c[i]));
        return s.code == 0;
    }
};

inline std::array<Fe, 3> cross(const Field& F, const std::array<Fe, 3>& u, const std::array<Fe, 3>& v) {
    return {F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])), F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
            F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))};
}

inline bool is_zero_vec(const std::array<Fe, 3>& v) { return v[0].code == 0 && v[1].code == 0 && v[2].code == 0; }

inline std::string to_string(const Field& F, const ProjPoint& P) {
    return "(" + F.to_string(P.c[0]) + ":" + F.to_string(P.c[1]) + ":" + F.to_string(P.c[2]) + ")";
}

/// "P1", "P2", "P3" for the coordinate vertices, empty otherwise.
inline std::string vertex_tag(const ProjPoint& P) {
    const int nz = (P.c[0].code != 0) + (P.c[1].code != 0) + (P.c[2].code != 0);
    if (nz != 1) return {};
    for (int i = 0; i < 3; ++i)
        if (P.c[i].code != 0) return "P" + std::to_string(i + 1);
    return {};
}

/// Distinct points on a line in a fixed order of preference: the meets with
/// Z=0, X=0, Y=0 and the vertices on the line, then A + cB for the first two
/// points A, B and c = 1, 2, ... in canonical order.
inline std::vector<ProjPoint> line_points(const Field& F, const ProjLine& L, std::size_t want) {
    std::vector<ProjPoint> out;
    const std::size_t cap = std::max<std::size_t>(want, 2);
    auto push = [&](const std::array<Fe, 3>& v) {
        if (is_zero_vec(v) || out.size() >= cap) return;
        const ProjPoint P = ProjPoint::make(F, v[0], v[1], v[2]);
        if (!L.contains(F, P)) return;
        for (const auto& Q : out)
            if (Q == P) return;
        out.push_back(P);
    };
    const Fe o = F.one(), z = F.zero();
    push(cross(F, L.c, {z, z, o}));
    push(cross(F, L.c, {o, z, z}));
    push(cross(F, L.c, {z, o, z}));
    push({o, z, z});
    push({z, o, z});
    push({z, z, o});
    if (out.size() < 2) throw Error(Errc::InvariantViolated, "line with fewer than two points");
    const ProjPoint A = out[0], B = out[1];
    for (gf::u64 i = 1; out.size() < want && i < F.order(); ++i) {
        const Fe c = F.element(i);
        push({F.add(A.c[0], F.mul(c, B.c[0])), F.add(A.c[1], F.mul(c, B.c[1])), F.add(A.c[2], F.mul(c, B.c[2]))});
    }
    out.resize(std::min(out.size(), want));
    return out;
}

}  // namespace hlab

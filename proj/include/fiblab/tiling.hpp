#ifndef FIBLAB_TILING_HPP
#define FIBLAB_TILING_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fiblab/rational.hpp"
#include "fiblab/sequences.hpp"

#include <json.hpp>

namespace fiblab {

using Vec3 = std::array<Rat, 3>;
using Mat3 = std::array<std::array<Rat, 3>, 3>;

struct AffineStep {
    Mat3 matrix;
    Vec3 offset;
    int map_id = 0;
    long long n = 0;
};

struct Cuboid {
    Vec3 lo, hi;  // componentwise lo < hi
    long long n = 0;

    Vec3 center() const {
        Vec3 c;
        for (int k = 0; k < 3; ++k) c[k] = (lo[k] + hi[k]) / mkint(2);
        return c;
    }
};

// The three affine map sequences; every matrix is (F_{n+1}/F_n) times a
// signed axis permutation, so cuboid images stay axis-aligned.
inline AffineStep affine_step(int i, long long n) {
    if (i < 1 || i > 3) throw std::invalid_argument("affine_step: map id must be 1..3");
    if (n < 1) throw std::invalid_argument("affine_step: step must be >= 1");
    Rat r = Rat(seq::fib(n + 1)) / Rat(seq::fib(n));
    bool odd = (n % 2 != 0);
    Rat sign_n = odd ? mkrat(-1, 1) : mkrat(1, 1);        // (-1)^n
    Rat sign_n1 = -sign_n;                                // (-1)^(n+1)
    AffineStep s;
    s.map_id = i;
    s.n = n;
    for (auto& row : s.matrix) row.fill(mkrat(0, 1));
    s.offset.fill(mkrat(0, 1));
    switch (i) {
        case 1:
            s.matrix[0][0] = r * sign_n1;
            s.matrix[1][1] = r * sign_n1;
            s.matrix[2][2] = r * sign_n;
            if (!odd) s.offset = {Rat(1) + r, Rat(1) + r, Rat(1) - r};
            break;
        case 2:
            s.matrix[0][1] = -r;
            s.matrix[1][2] = r;
            s.matrix[2][0] = -r;
            s.offset = {r, -r, r};
            break;
        case 3:
            s.matrix[0][0] = r;
            s.matrix[1][1] = r * sign_n1;
            s.matrix[2][2] = r * sign_n;
            if (!odd) s.offset = {Rat(1) - r, Rat(1) + r, Rat(1) - r};
            break;
    }
    return s;
}

inline Cuboid apply_step(const AffineStep& s, const Cuboid& c) {
    Vec3 a, b;  // images of the two extreme corners
    for (int row = 0; row < 3; ++row) {
        a[row] = s.offset[row];
        b[row] = s.offset[row];
        for (int col = 0; col < 3; ++col) {
            a[row] += s.matrix[row][col] * c.lo[col];
            b[row] += s.matrix[row][col] * c.hi[col];
        }
    }
    Cuboid out;
    out.n = c.n + 1;
    for (int k = 0; k < 3; ++k) {
        out.lo[k] = std::min(a[k], b[k]);
        out.hi[k] = std::max(a[k], b[k]);
    }
    return out;
}

inline std::vector<Cuboid> generate(int i, long long N) {
    if (N < 1) throw std::invalid_argument("generate: N must be >= 1");
    std::vector<Cuboid> boxes;
    Cuboid c;
    c.n = 1;
    c.lo = {mkrat(0, 1), mkrat(0, 1), mkrat(0, 1)};
    c.hi = {mkrat(1, 1), mkrat(1, 1), mkrat(1, 1)};
    boxes.push_back(c);
    for (long long n = 1; n < N; ++n) boxes.push_back(apply_step(affine_step(i, n), boxes.back()));
    return boxes;
}

struct PackingReport {
    std::vector<std::pair<long long, Rat>> sides;   // (n, exact side length)
    bool sides_are_cubes = true;                    // all three extents equal per box
    bool coplanar = true;                           // map 1: every center has x = y
    bool disjoint = true;
    std::optional<std::pair<long long, long long>> offending_pair;  // box indices n
    std::vector<double> two_step_ratios;            // |c_{n+2}-c_{n+1}| / |c_n-c_{n-1}|
};

inline PackingReport analyze(const std::vector<Cuboid>& boxes, int i) {
    PackingReport rep;
    for (auto& b : boxes) {
        Rat sx = b.hi[0] - b.lo[0], sy = b.hi[1] - b.lo[1], sz = b.hi[2] - b.lo[2];
        if (sx != sy || sy != sz) rep.sides_are_cubes = false;
        rep.sides.emplace_back(b.n, sx);
    }
    if (i == 1) {
        for (auto& b : boxes) {
            Vec3 c = b.center();
            if (c[0] != c[1]) rep.coplanar = false;
        }
    }
    for (size_t a = 0; a + 1 < boxes.size() && rep.disjoint; ++a)
        for (size_t b = a + 1; b < boxes.size(); ++b) {
            bool overlap = true;  // open-interval overlap on all three axes
            for (int k = 0; k < 3; ++k)
                overlap = overlap && boxes[a].lo[k] < boxes[b].hi[k] &&
                          boxes[b].lo[k] < boxes[a].hi[k];
            if (overlap) {
                rep.disjoint = false;
                rep.offending_pair = {boxes[a].n, boxes[b].n};
                break;
            }
        }
    if (boxes.size() >= 4) {
        std::vector<std::array<double, 3>> centers;
        for (auto& b : boxes) {
            Vec3 c = b.center();
            centers.push_back({c[0].get_d(), c[1].get_d(), c[2].get_d()});
        }
        auto dist = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
            double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
            return std::sqrt(dx * dx + dy * dy + dz * dz);
        };
        for (size_t n = 0; n + 3 < centers.size(); ++n) {
            double denom = dist(centers[n + 1], centers[n]);
            if (denom > 0)
                rep.two_step_ratios.push_back(dist(centers[n + 3], centers[n + 2]) / denom);
        }
    }
    return rep;
}

namespace tiling_detail {

inline std::string rat_str(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string float12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace tiling_detail

inline std::string export_boxes(const std::vector<Cuboid>& boxes, const std::string& format) {
    namespace td = tiling_detail;
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (auto& b : boxes) {
            nlohmann::json rec;
            rec["n"] = b.n;
            for (int k = 0; k < 3; ++k) {
                rec["min"].push_back(td::rat_str(b.lo[k]));
                rec["max"].push_back(td::rat_str(b.hi[k]));
                rec["min_f"].push_back(b.lo[k].get_d());
                rec["max_f"].push_back(b.hi[k].get_d());
            }
            arr.push_back(std::move(rec));
        }
        return arr.dump(2) + "\n";
    }
    if (format == "obj") {
        std::ostringstream out;
        long long vbase = 0;
        for (auto& b : boxes) {
            out << "g cube_" << b.n << "\n";
            for (int corner = 0; corner < 8; ++corner) {
                double x = ((corner & 1) ? b.hi[0] : b.lo[0]).get_d();
                double y = ((corner & 2) ? b.hi[1] : b.lo[1]).get_d();
                double z = ((corner & 4) ? b.hi[2] : b.lo[2]).get_d();
                out << "v " << td::float12(x) << " " << td::float12(y) << " "
                    << td::float12(z) << "\n";
            }
            // quads on the corner-bit cube {0..7}: faces with one bit fixed
            static const int faces[6][4] = {{0, 2, 6, 4}, {1, 5, 7, 3}, {0, 4, 5, 1},
                                            {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 6, 7, 5}};
            for (auto& f : faces) {
                out << "f";
                for (int v : f) out << " " << (vbase + v + 1);
                out << "\n";
            }
            vbase += 8;
        }
        return out.str();
    }
    throw std::invalid_argument("export_boxes: unknown format '" + format + "'");
}

// Parse the json export back into boxes (exact round-trip via the "p/q" strings).
inline std::vector<Cuboid> import_boxes_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<Cuboid> boxes;
    for (auto& rec : arr) {
        Cuboid b;
        b.n = rec.at("n").get<long long>();
        for (int k = 0; k < 3; ++k) {
            b.lo[k] = Rat(rec.at("min")[k].get<std::string>());
            b.hi[k] = Rat(rec.at("max")[k].get<std::string>());
            b.lo[k].canonicalize();
            b.hi[k].canonicalize();
        }
        boxes.push_back(std::move(b));
    }
    return boxes;
}

}  // namespace fiblab

#endif

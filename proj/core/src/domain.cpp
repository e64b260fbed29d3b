#include "skorohod/domain.hpp"

#include <algorithm>
#include <cmath>

#include "skorohod/errors.hpp"
#include "skorohod/sampling.hpp"

namespace skorohod {

using nlohmann::json;

namespace {

Vec eval_fns(const std::vector<TimeFnPtr>& fns, double t) {
    Vec v(static_cast<Eigen::Index>(fns.size()));
    for (std::size_t j = 0; j < fns.size(); ++j) v(static_cast<Eigen::Index>(j)) = (*fns[j])(t);
    return v;
}

bool sampled_time_independent(const std::function<Vec(double)>& f, double T) {
    const Vec base = f(0.0);
    for (double t : linspace(0.0, T, 17))
        if ((f(t) - base).norm() > 0.0) return false;
    return true;
}

json fns_to_json(const std::vector<TimeFnPtr>& fns) {
    json arr = json::array();
    for (const auto& f : fns) arr.push_back(f->to_json());
    return arr;
}

std::vector<TimeFnPtr> parse_fns(const json& arr) {
    std::vector<TimeFnPtr> out;
    for (const auto& e : arr) out.push_back(parse_time_fn(e));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// base class: generic numeric queries through the level set

Vec TimeDependentDomain::level_set_gradient(double t, const Vec& z) const {
    const int d = dimension();
    const double h = 1e-6 * (1.0 + z.cwiseAbs().maxCoeff());
    Vec g(d);
    Vec p = z;
    for (int j = 0; j < d; ++j) {
        p(j) = z(j) + h;
        const double up = level_set(t, p);
        p(j) = z(j) - h;
        const double dn = level_set(t, p);
        p(j) = z(j);
        g(j) = (up - dn) / (2.0 * h);
    }
    return g;
}

Membership TimeDependentDomain::membership(double t, const Vec& z, double eps_psi) const {
    const double psi = level_set(t, z);
    const double scale = std::max(level_set_gradient(t, z).norm(), gradient_floor());
    if (psi > eps_psi * scale) return Membership::Interior;
    if (psi < -eps_psi * scale) return Membership::Exterior;
    return Membership::Boundary;
}

double TimeDependentDomain::distance_to_slice(double t, const Vec& z) const {
    if (level_set(t, z) >= 0.0) return 0.0;
    return (closest_boundary_point(t, z) - z).norm();
}

double TimeDependentDomain::distance_to_boundary(double t, const Vec& z) const {
    return (closest_boundary_point(t, z) - z).norm();
}

Vec TimeDependentDomain::closest_boundary_point(double t, const Vec& z) const {
    // Newton walk of psi to zero, then tangential slides toward the foot point.
    Vec p = z;
    const double scale = 1.0 + z.norm();
    for (int pass = 0; pass < 24; ++pass) {
        for (int it = 0; it < 100; ++it) {
            const double psi = level_set(t, p);
            if (std::abs(psi) < 1e-13 * scale) break;
            const Vec g = level_set_gradient(t, p);
            const double gn2 = g.squaredNorm();
            if (gn2 < gradient_floor() * gradient_floor())
                throw GeometryError("level-set gradient below declared floor");
            p -= (psi / gn2) * g;
        }
        const Vec g = unit(level_set_gradient(t, p));
        const Vec v = p - z;
        const Vec tangential = v - v.dot(g) * g;
        if (tangential.norm() < 1e-12 * scale) break;
        p -= 0.5 * tangential;
    }
    return p;
}

std::vector<Vec> TimeDependentDomain::inward_normals(double t, const Vec& z) const {
    const Vec g = level_set_gradient(t, z);
    const double gn = g.norm();
    if (gn < gradient_floor())
        throw GeometryError("level-set gradient below declared floor at boundary point");
    return {Vec(g / gn)};
}

std::vector<Vec> TimeDependentDomain::boundary_sample(double t, int count) const {
    const SliceBounds bb = slice_bounds(t);
    const double span = (bb.hi - bb.lo).norm();
    if (!(span > 0.0) && dimension() > 1) throw GeometryError("degenerate slice bounds");
    const int d = dimension();

    std::vector<Vec> anchors{bb.center()};
    for (const Vec& o : box_lattice(Vec(bb.lo * 0.5 + bb.center() * 0.5),
                                    Vec(bb.hi * 0.5 + bb.center() * 0.5), 4))
        anchors.push_back(o);

    const int dirs = std::max(8, count / static_cast<int>(anchors.size()) + 1);
    std::vector<Vec> pts;
    for (const Vec& a : anchors) {
        for (const Vec& u : sphere_lattice(d, dirs)) {
            const double L = span > 0.0 ? span : 2.0 * std::abs(bb.hi(0) - bb.lo(0)) + 1.0;
            const int steps = 96;
            double prev_s = 0.0;
            double prev_psi = level_set(t, a);
            for (int k = 1; k <= steps; ++k) {
                const double s = L * static_cast<double>(k) / steps;
                const double psi = level_set(t, Vec(a + s * u));
                if ((prev_psi > 0.0) != (psi > 0.0)) {
                    double lo = prev_s, hi = s;
                    for (int b = 0; b < 60; ++b) {
                        const double mid = 0.5 * (lo + hi);
                        if ((level_set(t, Vec(a + mid * u)) > 0.0) == (prev_psi > 0.0))
                            lo = mid;
                        else
                            hi = mid;
                    }
                    pts.push_back(a + 0.5 * (lo + hi) * u);
                    if (static_cast<int>(pts.size()) >= count) return pts;
                }
                prev_s = s;
                prev_psi = psi;
            }
        }
        if (static_cast<int>(pts.size()) >= count) break;
    }
    if (pts.empty()) throw GeometryError("no boundary points found; empty slice?");
    return pts;
}

std::vector<Vec> TimeDependentDomain::closure_sample(double t, int count) const {
    std::vector<Vec> pts = boundary_sample(t, std::max(2, count / 2));
    const SliceBounds bb = slice_bounds(t);
    for (const Vec& z : box_lattice(bb.lo, bb.hi, 4 * count)) {
        if (level_set(t, z) >= 0.0) pts.push_back(z);
        if (static_cast<int>(pts.size()) >= count) break;
    }
    return pts;
}

void TimeDependentDomain::validate_slices(int temporal_samples) const {
    for (double t : linspace(0.0, horizon(), temporal_samples)) {
        const SliceBounds bb = slice_bounds(t);
        if (!((bb.hi - bb.lo).minCoeff() >= 0.0))
            throw GeometryError("slice bounds inverted at t = " + std::to_string(t));
        if (level_set(t, bb.center()) < 0.0) {
            // center may fall in a hole; require some closure point instead
            if (closure_sample(t, 8).empty())
                throw GeometryError("empty slice at t = " + std::to_string(t));
        }
    }
}

// ---------------------------------------------------------------------------
// MovingBall

MovingBall::MovingBall(std::vector<TimeFnPtr> center, TimeFnPtr radius, double horizon)
    : center_(std::move(center)), radius_(std::move(radius)), horizon_(horizon) {
    if (center_.empty()) throw ConfigError("moving_ball needs a center");
    if (horizon_ <= 0.0) throw ConfigError("horizon must be positive");
    for (double t : linspace(0.0, horizon_, 33))
        if ((*radius_)(t) <= 0.0)
            throw GeometryError("moving_ball radius must stay positive");
}

Vec MovingBall::center(double t) const { return eval_fns(center_, t); }

double MovingBall::level_set(double t, const Vec& z) const {
    return radius(t) - (z - center(t)).norm();
}

Vec MovingBall::level_set_gradient(double t, const Vec& z) const {
    const Vec r = center(t) - z;
    const double n = r.norm();
    if (n < 1e-14) {
        Vec g = Vec::Zero(dimension());
        g(0) = 1.0;
        return g;
    }
    return r / n;
}

double MovingBall::distance_to_slice(double t, const Vec& z) const {
    return std::max(0.0, (z - center(t)).norm() - radius(t));
}

double MovingBall::distance_to_boundary(double t, const Vec& z) const {
    return std::abs((z - center(t)).norm() - radius(t));
}

Vec MovingBall::closest_boundary_point(double t, const Vec& z) const {
    const Vec c = center(t);
    Vec dir = z - c;
    const double n = dir.norm();
    if (n < 1e-14) {
        dir = Vec::Zero(dimension());
        dir(0) = 1.0;
    } else {
        dir /= n;
    }
    return c + radius(t) * dir;
}

std::vector<Vec> MovingBall::inward_normals(double t, const Vec& z) const {
    const Vec r = center(t) - z;
    const double n = r.norm();
    if (n < 1e-14) throw GeometryError("normal undefined at ball center");
    return {Vec(r / n)};
}

SliceBounds MovingBall::slice_bounds(double t) const {
    const Vec c = center(t);
    const double R = radius(t);
    return {Vec(c.array() - R), Vec(c.array() + R)};
}

std::vector<Vec> MovingBall::boundary_sample(double t, int count) const {
    const Vec c = center(t);
    const double R = radius(t);
    std::vector<Vec> pts;
    for (const Vec& u : sphere_lattice(dimension(), count)) pts.push_back(c + R * u);
    return pts;
}

std::optional<double> MovingBall::slice_deficiency(double s, double t) const {
    const double drift = (center(s) - center(t)).norm();
    return std::max(0.0, drift + radius(s) - radius(t));
}

bool MovingBall::time_independent() const {
    return sampled_time_independent(
        [this](double t) {
            Vec v(dimension() + 1);
            v.head(dimension()) = center(t);
            v(dimension()) = radius(t);
            return v;
        },
        horizon_);
}

json MovingBall::to_json() const {
    return {{"family", "moving_ball"},
            {"center", fns_to_json(center_)},
            {"radius", radius_->to_json()}};
}

// ---------------------------------------------------------------------------
// MovingBox

MovingBox::MovingBox(std::vector<TimeFnPtr> lo, std::vector<TimeFnPtr> hi, double horizon)
    : lo_(std::move(lo)), hi_(std::move(hi)), horizon_(horizon) {
    if (lo_.empty() || lo_.size() != hi_.size())
        throw ConfigError("moving_box needs matching lo/hi interval lists");
    if (horizon_ <= 0.0) throw ConfigError("horizon must be positive");
    for (double t : linspace(0.0, horizon_, 33)) {
        const Vec g = eval_fns(lo_, t), h = eval_fns(hi_, t);
        if (!((h - g).minCoeff() > 0.0))
            throw GeometryError("moving_box interval degenerates (floor >= ceiling)");
    }
}

Vec MovingBox::lo(double t) const { return eval_fns(lo_, t); }
Vec MovingBox::hi(double t) const { return eval_fns(hi_, t); }

double MovingBox::level_set(double t, const Vec& z) const {
    const Vec g = lo(t), h = hi(t);
    double psi = std::numeric_limits<double>::infinity();
    for (int j = 0; j < dimension(); ++j)
        psi = std::min({psi, z(j) - g(j), h(j) - z(j)});
    return psi;
}

Vec MovingBox::level_set_gradient(double t, const Vec& z) const {
    const Vec g = lo(t), h = hi(t);
    int best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    double sign = 1.0;
    for (int j = 0; j < dimension(); ++j) {
        if (z(j) - g(j) < best) { best = z(j) - g(j); best_j = j; sign = 1.0; }
        if (h(j) - z(j) < best) { best = h(j) - z(j); best_j = j; sign = -1.0; }
    }
    Vec grad = Vec::Zero(dimension());
    grad(best_j) = sign;
    return grad;
}

double MovingBox::distance_to_slice(double t, const Vec& z) const {
    const Vec g = lo(t), h = hi(t);
    double sq = 0.0;
    for (int j = 0; j < dimension(); ++j) {
        const double over = std::max({0.0, g(j) - z(j), z(j) - h(j)});
        sq += over * over;
    }
    return std::sqrt(sq);
}

double MovingBox::distance_to_boundary(double t, const Vec& z) const {
    const double outside = distance_to_slice(t, z);
    if (outside > 0.0) return outside;
    return level_set(t, z);
}

Vec MovingBox::closest_boundary_point(double t, const Vec& z) const {
    const Vec g = lo(t), h = hi(t);
    if (distance_to_slice(t, z) > 0.0)
        return z.cwiseMax(g).cwiseMin(h);
    // inside: move the coordinate with the least slack onto its face
    int best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    double target = 0.0;
    for (int j = 0; j < dimension(); ++j) {
        if (z(j) - g(j) < best) { best = z(j) - g(j); best_j = j; target = g(j); }
        if (h(j) - z(j) < best) { best = h(j) - z(j); best_j = j; target = h(j); }
    }
    Vec p = z;
    p(best_j) = target;
    return p;
}

std::vector<Vec> MovingBox::inward_normals(double t, const Vec& z) const {
    const Vec g = lo(t), h = hi(t);
    const double tol = 1e-8 * (1.0 + z.cwiseAbs().maxCoeff());
    std::vector<Vec> normals;
    for (int j = 0; j < dimension(); ++j) {
        if (std::abs(z(j) - g(j)) <= tol) {
            Vec n = Vec::Zero(dimension());
            n(j) = 1.0;
            normals.push_back(n);
        }
        if (std::abs(z(j) - h(j)) <= tol) {
            Vec n = Vec::Zero(dimension());
            n(j) = -1.0;
            normals.push_back(n);
        }
    }
    if (normals.empty()) return TimeDependentDomain::inward_normals(t, z);
    return normals;
}

SliceBounds MovingBox::slice_bounds(double t) const { return {lo(t), hi(t)}; }

std::vector<Vec> MovingBox::boundary_sample(double t, int count) const {
    const Vec g = lo(t), h = hi(t);
    const int d = dimension();
    std::vector<Vec> pts;
    if (d == 1) {
        Vec a(1), b(1);
        a << g(0);
        b << h(0);
        return {a, b};
    }
    const int per_face = std::max(1, count / (2 * d));
    for (int j = 0; j < d; ++j) {
        for (double face : {g(j), h(j)}) {
            Vec flo = g, fhi = h;
            flo(j) = face;
            fhi(j) = face;
            for (const Vec& p : box_lattice(flo, fhi, per_face)) pts.push_back(p);
        }
    }
    return pts;
}

std::optional<double> MovingBox::slice_deficiency(double s, double t) const {
    const Vec gs = lo(s), hs = hi(s), gt = lo(t), ht = hi(t);
    double sq = 0.0;
    for (int j = 0; j < dimension(); ++j) {
        const double over = std::max({0.0, gt(j) - gs(j), hs(j) - ht(j)});
        sq += over * over;
    }
    return std::sqrt(sq);
}

bool MovingBox::time_independent() const {
    return sampled_time_independent(
        [this](double t) {
            Vec v(2 * dimension());
            v.head(dimension()) = lo(t);
            v.tail(dimension()) = hi(t);
            return v;
        },
        horizon_);
}

json MovingBox::to_json() const {
    return {{"family", "moving_box"},
            {"lo", fns_to_json(lo_)},
            {"hi", fns_to_json(hi_)}};
}

// ---------------------------------------------------------------------------
// MovingConvexPolytope

MovingConvexPolytope::MovingConvexPolytope(std::vector<Vec> face_normals,
                                           std::vector<TimeFnPtr> offsets, double horizon)
    : face_normals_(std::move(face_normals)), offsets_(std::move(offsets)), horizon_(horizon) {
    if (face_normals_.empty() || face_normals_.size() != offsets_.size())
        throw ConfigError("moving_polytope needs matching faces/offsets");
    if (horizon_ <= 0.0) throw ConfigError("horizon must be positive");
    for (Vec& n : face_normals_) {
        const double len = n.norm();
        if (len < 1e-12) throw ConfigError("polytope face normal is zero");
        n /= len;
    }
    // boundedness: every direction must be blocked by some face
    const int d = dimension();
    for (const Vec& u : sphere_lattice(d, d <= 2 ? 64 : 256)) {
        double best = -1.0;
        for (const Vec& n : face_normals_) best = std::max(best, n.dot(u));
        if (best <= 1e-9) throw GeometryError("polytope slice unbounded");
    }
    for (double t : linspace(0.0, horizon_, 17)) {
        Vec inside = project_to_closure(t, Vec::Zero(d));
        if (level_set(t, inside) < -1e-9)
            throw GeometryError("empty polytope slice at t = " + std::to_string(t));
    }
}

double MovingConvexPolytope::level_set(double t, const Vec& z) const {
    double psi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < face_normals_.size(); ++i)
        psi = std::min(psi, (*offsets_[i])(t)-face_normals_[i].dot(z));
    return psi;
}

Vec MovingConvexPolytope::level_set_gradient(double t, const Vec& z) const {
    std::size_t best_i = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < face_normals_.size(); ++i) {
        const double slack = (*offsets_[i])(t)-face_normals_[i].dot(z);
        if (slack < best) { best = slack; best_i = i; }
    }
    return -face_normals_[best_i];
}

Vec MovingConvexPolytope::project_to_closure(double t, const Vec& z) const {
    // Dykstra's alternating projections onto the half-spaces
    const std::size_t m = face_normals_.size();
    Vec p = z;
    std::vector<Vec> corrections(m, Vec::Zero(dimension()));
    for (int pass = 0; pass < 400; ++pass) {
        double moved = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const Vec y = p + corrections[i];
            const double viol = face_normals_[i].dot(y) - (*offsets_[i])(t);
            Vec pn = viol > 0.0 ? Vec(y - viol * face_normals_[i]) : y;
            corrections[i] = y - pn;
            moved += (pn - p).norm();
            p = std::move(pn);
        }
        if (moved < 1e-14 * (1.0 + z.norm())) break;
    }
    return p;
}

double MovingConvexPolytope::distance_to_slice(double t, const Vec& z) const {
    if (level_set(t, z) >= 0.0) return 0.0;
    return (project_to_closure(t, z) - z).norm();
}

Vec MovingConvexPolytope::closest_boundary_point(double t, const Vec& z) const {
    const double psi = level_set(t, z);
    if (psi < 0.0) return project_to_closure(t, z);
    std::size_t best_i = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < face_normals_.size(); ++i) {
        const double slack = (*offsets_[i])(t)-face_normals_[i].dot(z);
        if (slack < best) { best = slack; best_i = i; }
    }
    return z + best * face_normals_[best_i];
}

std::vector<int> MovingConvexPolytope::active_faces(double t, const Vec& z, double tol) const {
    std::vector<int> active;
    const double scale = 1.0 + z.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < face_normals_.size(); ++i)
        if (std::abs((*offsets_[i])(t)-face_normals_[i].dot(z)) <= tol * scale)
            active.push_back(static_cast<int>(i));
    return active;
}

std::vector<Vec> MovingConvexPolytope::inward_normals(double t, const Vec& z) const {
    std::vector<Vec> normals;
    for (int i : active_faces(t, z))
        normals.push_back(-face_normals_[static_cast<std::size_t>(i)]);
    if (normals.empty()) return TimeDependentDomain::inward_normals(t, z);
    return normals;
}

SliceBounds MovingConvexPolytope::slice_bounds(double t) const {
    const int d = dimension();
    const Vec inside = project_to_closure(t, Vec::Zero(d));
    double reach = 0.0;
    for (const Vec& u : sphere_lattice(d, d <= 2 ? 64 : 128)) {
        // first crossing along the ray; convex slice, so a single hit
        double lo = 0.0, hi = 1.0;
        while (level_set(t, Vec(inside + hi * u)) > 0.0 && hi < 1e9) hi *= 2.0;
        for (int b = 0; b < 60; ++b) {
            const double mid = 0.5 * (lo + hi);
            (level_set(t, Vec(inside + mid * u)) > 0.0 ? lo : hi) = mid;
        }
        reach = std::max(reach, hi);
    }
    const double pad = 1.1 * reach + 1e-9;
    return {Vec(inside.array() - pad), Vec(inside.array() + pad)};
}

std::vector<Vec> MovingConvexPolytope::boundary_sample(double t, int count) const {
    const int d = dimension();
    if (d == 2) {
        // vertex enumeration, then edge lattice
        std::vector<Vec> verts;
        const std::size_t m = face_normals_.size();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                Eigen::Matrix2d A;
                A.row(0) = face_normals_[i].transpose();
                A.row(1) = face_normals_[j].transpose();
                if (std::abs(A.determinant()) < 1e-12) continue;
                Eigen::Vector2d b((*offsets_[i])(t), (*offsets_[j])(t));
                Eigen::Vector2d v = A.colPivHouseholderQr().solve(b);
                bool feasible = true;
                for (std::size_t k = 0; k < m; ++k)
                    if (face_normals_[k].dot(v) > (*offsets_[k])(t) + 1e-9) feasible = false;
                if (feasible) verts.push_back(v);
            }
        }
        if (verts.empty()) throw GeometryError("polytope has no vertices; empty slice?");
        Vec centroid = Vec::Zero(2);
        for (const Vec& v : verts) centroid += v;
        centroid /= static_cast<double>(verts.size());
        std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
            return std::atan2(a(1) - centroid(1), a(0) - centroid(0)) <
                   std::atan2(b(1) - centroid(1), b(0) - centroid(0));
        });
        std::vector<Vec> pts;
        const int per_edge = std::max(1, count / static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const Vec& a = verts[i];
            const Vec& b = verts[(i + 1) % verts.size()];
            for (int k = 0; k < per_edge; ++k)
                pts.push_back(a + (b - a) * ((k + 0.5) / per_edge));
        }
        return pts;
    }
    return TimeDependentDomain::boundary_sample(t, count);
}

bool MovingConvexPolytope::time_independent() const {
    return sampled_time_independent(
        [this](double t) {
            Vec v(static_cast<Eigen::Index>(offsets_.size()));
            for (std::size_t i = 0; i < offsets_.size(); ++i)
                v(static_cast<Eigen::Index>(i)) = (*offsets_[i])(t);
            return v;
        },
        horizon_);
}

json MovingConvexPolytope::to_json() const {
    json faces = json::array();
    for (std::size_t i = 0; i < face_normals_.size(); ++i) {
        std::vector<double> n(face_normals_[i].data(),
                              face_normals_[i].data() + face_normals_[i].size());
        faces.push_back({{"normal", n}, {"offset", offsets_[i]->to_json()}});
    }
    return {{"family", "moving_polytope"}, {"faces", faces}};
}

// ---------------------------------------------------------------------------
// AnnulusDomain

AnnulusDomain::AnnulusDomain(std::vector<TimeFnPtr> center, TimeFnPtr inner, TimeFnPtr outer,
                             double horizon)
    : center_(std::move(center)), inner_(std::move(inner)), outer_(std::move(outer)),
      horizon_(horizon) {
    if (center_.size() < 2) throw ConfigError("annulus needs dimension >= 2");
    if (horizon_ <= 0.0) throw ConfigError("horizon must be positive");
    for (double t : linspace(0.0, horizon_, 33)) {
        if (!(0.0 < (*inner_)(t) && (*inner_)(t) < (*outer_)(t)))
            throw GeometryError("annulus requires 0 < inner < outer for all t");
    }
}

Vec AnnulusDomain::center(double t) const { return eval_fns(center_, t); }

double AnnulusDomain::level_set(double t, const Vec& z) const {
    const double r = (z - center(t)).norm();
    return std::min(outer(t) - r, r - inner(t));
}

Vec AnnulusDomain::level_set_gradient(double t, const Vec& z) const {
    const Vec c = center(t);
    Vec dir = z - c;
    const double r = dir.norm();
    if (r < 1e-14) {
        dir = Vec::Zero(dimension());
        dir(0) = 1.0;
    } else {
        dir /= r;
    }
    return (outer(t) - r < r - inner(t)) ? Vec(-dir) : dir;
}

double AnnulusDomain::distance_to_slice(double t, const Vec& z) const {
    const double r = (z - center(t)).norm();
    return std::max({0.0, r - outer(t), inner(t) - r});
}

double AnnulusDomain::distance_to_boundary(double t, const Vec& z) const {
    const double r = (z - center(t)).norm();
    return std::min(std::abs(r - outer(t)), std::abs(r - inner(t)));
}

Vec AnnulusDomain::closest_boundary_point(double t, const Vec& z) const {
    const Vec c = center(t);
    Vec dir = z - c;
    const double r = dir.norm();
    if (r < 1e-14) {
        dir = Vec::Zero(dimension());
        dir(0) = 1.0;
    } else {
        dir /= r;
    }
    const double target =
        std::abs(r - outer(t)) < std::abs(r - inner(t)) ? outer(t) : inner(t);
    return c + target * dir;
}

std::vector<Vec> AnnulusDomain::inward_normals(double t, const Vec& z) const {
    const Vec c = center(t);
    Vec dir = z - c;
    const double r = dir.norm();
    if (r < 1e-14) throw GeometryError("normal undefined at annulus center");
    dir /= r;
    return {std::abs(r - outer(t)) < std::abs(r - inner(t)) ? Vec(-dir) : dir};
}

SliceBounds AnnulusDomain::slice_bounds(double t) const {
    const Vec c = center(t);
    const double R = outer(t);
    return {Vec(c.array() - R), Vec(c.array() + R)};
}

std::vector<Vec> AnnulusDomain::boundary_sample(double t, int count) const {
    const Vec c = center(t);
    const double ri = inner(t), ro = outer(t);
    const int n_out = std::max(2, static_cast<int>(count * ro / (ri + ro)));
    const int n_in = std::max(2, count - n_out);
    std::vector<Vec> pts;
    for (const Vec& u : sphere_lattice(dimension(), n_out)) pts.push_back(c + ro * u);
    for (const Vec& u : sphere_lattice(dimension(), n_in)) pts.push_back(c + ri * u);
    return pts;
}

std::optional<double> AnnulusDomain::slice_deficiency(double s, double t) const {
    const double e = (center(s) - center(t)).norm();
    const double r_max = e + outer(s);
    double r_min;
    if (e < inner(s))
        r_min = inner(s) - e;
    else if (e > outer(s))
        r_min = e - outer(s);
    else
        r_min = 0.0;
    return std::max({0.0, r_max - outer(t), inner(t) - r_min});
}

bool AnnulusDomain::time_independent() const {
    return sampled_time_independent(
        [this](double t) {
            Vec v(dimension() + 2);
            v.head(dimension()) = center(t);
            v(dimension()) = inner(t);
            v(dimension() + 1) = outer(t);
            return v;
        },
        horizon_);
}

json AnnulusDomain::to_json() const {
    return {{"family", "annulus"},
            {"center", fns_to_json(center_)},
            {"inner", inner_->to_json()},
            {"outer", outer_->to_json()}};
}

// ---------------------------------------------------------------------------
// LevelSetDomain

LevelSetDomain::LevelSetDomain(int dimension, double horizon, LevelSetFn psi, BoundsFn bounds,
                               GradientFn gradient, bool convex)
    : dim_(dimension), horizon_(horizon), psi_(std::move(psi)), bounds_(std::move(bounds)),
      gradient_(std::move(gradient)), convex_(convex) {
    if (dim_ < 1) throw ConfigError("level-set domain needs dimension >= 1");
    if (horizon_ <= 0.0) throw ConfigError("horizon must be positive");
}

Vec LevelSetDomain::level_set_gradient(double t, const Vec& z) const {
    if (gradient_) return gradient_(t, z);
    return TimeDependentDomain::level_set_gradient(t, z);
}

json LevelSetDomain::to_json() const {
    return {{"family", "level_set"}, {"dimension", dim_}};
}

// ---------------------------------------------------------------------------

DomainPtr parse_domain(const json& spec, double horizon) {
    if (!spec.is_object() || !spec.contains("family"))
        throw ConfigError("domain spec needs a \"family\" field");
    const std::string family = spec.at("family").get<std::string>();
    if (family == "moving_ball")
        return std::make_shared<MovingBall>(parse_fns(spec.at("center")),
                                            parse_time_fn(spec.at("radius")), horizon);
    if (family == "moving_box")
        return std::make_shared<MovingBox>(parse_fns(spec.at("lo")), parse_fns(spec.at("hi")),
                                           horizon);
    if (family == "moving_polytope") {
        std::vector<Vec> normals;
        std::vector<TimeFnPtr> offsets;
        for (const auto& face : spec.at("faces")) {
            const auto n = face.at("normal").get<std::vector<double>>();
            normals.push_back(Eigen::Map<const Vec>(n.data(), static_cast<Eigen::Index>(n.size())));
            offsets.push_back(parse_time_fn(face.at("offset")));
        }
        return std::make_shared<MovingConvexPolytope>(std::move(normals), std::move(offsets),
                                                      horizon);
    }
    if (family == "annulus")
        return std::make_shared<AnnulusDomain>(parse_fns(spec.at("center")),
                                               parse_time_fn(spec.at("inner")),
                                               parse_time_fn(spec.at("outer")), horizon);
    throw ConfigError("unknown domain family '" + family + "'");
}

}  // namespace skorohod

#include "rotw/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

namespace rotw {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 axpy(double a, const Vec3& x, double b, const Vec3& y, double c, const Vec3& z) {
    return {a * x.x + b * y.x + c * z.x, a * x.y + b * y.y + c * z.y,
            a * x.z + b * y.z + c * z.z};
}

// Runs fn(i) for i in [0, n), chunked over a few threads.  Writes are
// disjoint per row, so the result does not depend on scheduling.
void parallel_rows(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(std::min<std::size_t>(hw, 8), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

RevolutionMesh::RevolutionMesh(const GeneratrixCurve& source, int n_theta)
    : rows_(source.samples().size()), cols_(static_cast<std::size_t>(n_theta)),
      source_(source) {
    grid_.resize(rows_ * cols_);
    arc_.resize(rows_);
    std::vector<double> ct(cols_), st(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        const double th = theta(j);
        ct[j] = std::cos(th);
        st[j] = std::sin(th);
    }
    const auto& samples = source.samples();
    parallel_rows(rows_, [&](std::size_t i) {
        arc_[i] = samples[i].s;
        const double x = samples[i].x;
        const double z = samples[i].z;
        for (std::size_t j = 0; j < cols_; ++j) grid_[i * cols_ + j] = {x * ct[j], x * st[j], z};
    });
}

double RevolutionMesh::theta(std::size_t j) const {
    return -kPi + 2 * kPi * static_cast<double>(j) / static_cast<double>(cols_);
}

RevolutionMesh revolve(const GeneratrixCurve& c, int n_theta) {
    if (n_theta < 8) throw BadParams("revolve: requires n_theta >= 8");
    for (const auto& st : c.samples())
        if (!(st.x > 0)) throw AxisTouch("revolve: generatrix touches or crosses the axis");
    return RevolutionMesh(c, n_theta);
}

MeshCurvature mesh_principal_curvatures(const RevolutionMesh& mesh) {
    const std::size_t rows = mesh.rows();
    const std::size_t cols = mesh.cols();
    if (rows < 5 || cols < 8)
        throw DegenerateGrid("mesh_principal_curvatures: need at least a 5 x 8 grid");

    MeshCurvature mc;
    mc.rows = rows;
    mc.cols = cols;
    mc.k_m_est.assign(rows * cols, 0.0);
    mc.k_p_est.assign(rows * cols, 0.0);
    mc.boundary_row.assign(rows, false);
    mc.boundary_row.front() = mc.boundary_row.back() = true;

    const double h_theta = 2 * kPi / static_cast<double>(cols);

    parallel_rows(rows, [&](std::size_t i) {
        // Three rows and their abscissae for the meridian differences;
        // boundary rows fall back to the one-sided three-point stencil.
        std::size_t ia, ib, ic;
        if (i == 0) {
            ia = 0; ib = 1; ic = 2;
        } else if (i == rows - 1) {
            ia = rows - 3; ib = rows - 2; ic = rows - 1;
        } else {
            ia = i - 1; ib = i; ic = i + 1;
        }
        const double sa = mesh.arc(ia), sb = mesh.arc(ib), sc = mesh.arc(ic);
        const double s0 = mesh.arc(i);
        // Lagrange weights for f'(s0) and f''(s0) on the 3-point stencil.
        const double da = (2 * s0 - sb - sc) / ((sa - sb) * (sa - sc));
        const double db = (2 * s0 - sa - sc) / ((sb - sa) * (sb - sc));
        const double dc = (2 * s0 - sa - sb) / ((sc - sa) * (sc - sb));
        const double ea = 2 / ((sa - sb) * (sa - sc));
        const double eb = 2 / ((sb - sa) * (sb - sc));
        const double ec = 2 / ((sc - sa) * (sc - sb));

        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t jm = (j + cols - 1) % cols;
            const std::size_t jp = (j + 1) % cols;
            const Vec3& X = mesh.at(i, j);
            const Vec3& Xm = mesh.at(i, jm);
            const Vec3& Xp = mesh.at(i, jp);

            const Vec3 Xt = axpy(-0.5 / h_theta, Xm, 0.5 / h_theta, Xp, 0.0, X);
            const Vec3 Xtt = axpy(1 / (h_theta * h_theta), Xm, 1 / (h_theta * h_theta), Xp,
                                  -2 / (h_theta * h_theta), X);
            const Vec3 Xs = axpy(da, mesh.at(ia, j), db, mesh.at(ib, j), dc, mesh.at(ic, j));
            const Vec3 Xss = axpy(ea, mesh.at(ia, j), eb, mesh.at(ib, j), ec, mesh.at(ic, j));

            Vec3 nrm = cross(Xs, Xt);
            const double len = std::sqrt(dot(nrm, nrm));
            nrm = {nrm.x / len, nrm.y / len, nrm.z / len};

            mc.k_m_est[i * cols + j] = dot(Xss, nrm) / dot(Xs, Xs);
            mc.k_p_est[i * cols + j] = dot(Xtt, nrm) / dot(Xt, Xt);
        }
    });
    return mc;
}

void write_obj(std::ostream& os, const RevolutionMesh& mesh, bool triangulate) {
    const std::size_t rows = mesh.rows();
    const std::size_t cols = mesh.cols();
    os << "# surface of revolution; axis of revolution = +z\n";
    os << "# grid " << rows << " x " << cols << (mesh.theta_closed() ? " (theta closed)\n" : "\n");
    char buf[160];
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const Vec3& v = mesh.at(i, j);
            std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
            os << buf;
        }
    auto id = [cols](std::size_t i, std::size_t j) { return i * cols + j + 1; };
    for (std::size_t i = 0; i + 1 < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t jp = (j + 1) % cols;
            if (triangulate) {
                std::snprintf(buf, sizeof(buf), "f %zu %zu %zu\nf %zu %zu %zu\n", id(i, j),
                              id(i + 1, j), id(i + 1, jp), id(i, j), id(i + 1, jp), id(i, jp));
            } else {
                std::snprintf(buf, sizeof(buf), "f %zu %zu %zu %zu\n", id(i, j), id(i + 1, j),
                              id(i + 1, jp), id(i, jp));
            }
            os << buf;
        }
}

void export_obj(const RevolutionMesh& mesh, const std::string& path, bool triangulate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("export_obj: cannot open '" + path + "' for writing");
    write_obj(out, mesh, triangulate);
    out.flush();
    if (!out) throw IoError("export_obj: write failed for '" + path + "'");
}

void write_mesh_curvature_csv(std::ostream& os, const RevolutionMesh& mesh,
                              const MeshCurvature& mc) {
    os << "i,j,x,y,z,k_m_est,k_p_est\n";
    char buf[240];
    for (std::size_t i = 0; i < mesh.rows(); ++i)
        for (std::size_t j = 0; j < mesh.cols(); ++j) {
            const Vec3& v = mesh.at(i, j);
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j,
                          v.x, v.y, v.z, mc.k_m(i, j), mc.k_p(i, j));
            os << buf;
        }
}

}  // namespace rotw

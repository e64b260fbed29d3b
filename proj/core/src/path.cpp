#include "skorohod/path.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "skorohod/errors.hpp"

namespace skorohod {

SampledCadlagPath::SampledCadlagPath(TimeGrid grid, std::vector<Vec> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.node_count())
        throw ConfigError("path needs one value per grid node");
    const auto d = values_.front().size();
    if (d < 1) throw ConfigError("path dimension must be >= 1");
    for (const Vec& v : values_)
        if (v.size() != d) throw ConfigError("path values must share one dimension");
}

const Vec& SampledCadlagPath::left_limit(double t) const {
    std::size_t k = grid_.floor_index(t);
    if (k > 0 && grid_.times()[k] == t) --k;
    return values_[k];
}

bool SampledCadlagPath::operator==(const SampledCadlagPath& other) const {
    if (!(grid_ == other.grid_)) return false;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (values_[k].size() != other.values_[k].size()) return false;
        if (!(values_[k].array() == other.values_[k].array()).all()) return false;
    }
    return true;
}

double oscillation(const SampledCadlagPath& path, double t1, double t2) {
    const double T = path.horizon();
    if (t1 < 0.0 || t2 > T * (1.0 + 1e-12) || t1 > t2)
        throw std::domain_error("oscillation window outside [0, T]");

    const auto& times = path.grid().times();
    const auto& values = path.values();
    std::size_t first = path.grid().floor_index(t1);
    // Collect indices of the values attained on [t1, t2].
    std::vector<std::size_t> idx;
    idx.push_back(first);
    for (std::size_t k = first + 1; k < times.size() && times[k] <= t2; ++k)
        idx.push_back(k);

    if (path.dimension() == 1) {
        double lo = values[idx.front()](0), hi = lo;
        for (std::size_t k : idx) {
            lo = std::min(lo, values[k](0));
            hi = std::max(hi, values[k](0));
        }
        return hi - lo;
    }
    double best = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            best = std::max(best, (values[idx[j]] - values[idx[i]]).norm());
    return best;
}

double max_jump(const SampledCadlagPath& path) {
    const auto& values = path.values();
    double best = 0.0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k)
        best = std::max(best, (values[k + 1] - values[k]).norm());
    return best;
}

SampledCadlagPath restrict(const SampledCadlagPath& path, double t1, double t2) {
    const double T = path.horizon();
    if (t1 < 0.0 || t2 > T * (1.0 + 1e-12) || t1 >= t2)
        throw std::domain_error("restrict window outside [0, T]");

    const auto& times = path.grid().times();
    std::vector<double> sub_times;
    std::vector<Vec> sub_values;
    sub_times.push_back(0.0);
    sub_values.push_back(path.at(t1));
    for (std::size_t k = path.grid().floor_index(t1) + 1;
         k < times.size() && times[k] <= t2; ++k) {
        if (times[k] == t1) continue;
        sub_times.push_back(times[k] - t1);
        sub_values.push_back(path.values()[k]);
    }
    if (sub_times.back() != t2 - t1) {
        sub_times.push_back(t2 - t1);
        sub_values.push_back(path.at(t2));
    }
    return SampledCadlagPath(TimeGrid(std::move(sub_times)), std::move(sub_values));
}

std::vector<std::string> ReflectionRecord::structural_violations(double tol) const {
    std::vector<std::string> out;
    if (lambda.size() != grid.node_count() || total_variation.size() != grid.node_count())
        out.push_back("reflection record size mismatch with grid");
    if (gammas.size() + 1 != grid.node_count())
        out.push_back("reflection record needs one gamma slot per step");
    if (!out.empty()) return out;

    for (std::size_t k = 0; k + 1 < grid.node_count(); ++k) {
        const double dv = total_variation[k + 1] - total_variation[k];
        const double step = (lambda[k + 1] - lambda[k]).norm();
        if (dv < -tol)
            out.push_back("total variation decreases at step " + std::to_string(k));
        if (std::abs(step - dv) > tol)
            out.push_back("|lambda increment| != |lambda| increment at step " +
                          std::to_string(k));
        const bool pushed = dv > tol;
        if (pushed != gammas[k].has_value())
            out.push_back("gamma present iff variation increased fails at step " +
                          std::to_string(k));
        if (gammas[k].has_value()) {
            const Vec& g = *gammas[k];
            if (std::abs(g.norm() - 1.0) > 1e-6)
                out.push_back("gamma not unit at step " + std::to_string(k));
            // lambda increment must be a nonnegative multiple of gamma
            if ((lambda[k + 1] - lambda[k] - dv * g).norm() > tol * (1.0 + dv))
                out.push_back("lambda increment not along gamma at step " +
                              std::to_string(k));
        }
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const SampledCadlagPath& path) {
    const int d = path.dimension();
    out << "t";
    for (int j = 1; j <= d; ++j) out << ",v" << j;
    out << "\n";
    const auto& times = path.grid().times();
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << format_double(times[k]);
        for (int j = 0; j < d; ++j) out << "," << format_double(path.values()[k](j));
        out << "\n";
    }
}

namespace {

double parse_double(const std::string& field) {
    double x = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), x);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ConfigError("bad numeric field in CSV: '" + field + "'");
    return x;
}

}  // namespace

SampledCadlagPath read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV");
    // header decides dimension
    int d = -1;  // count of v-columns
    {
        std::stringstream ss(line);
        std::string field;
        int cols = 0;
        while (std::getline(ss, field, ',')) ++cols;
        d = cols - 1;
        if (d < 1) throw ConfigError("CSV header must be t,v1,...,vd");
    }
    std::vector<double> times;
    std::vector<Vec> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        if (!std::getline(ss, field, ',')) throw ConfigError("short CSV row");
        times.push_back(parse_double(field));
        Vec v(d);
        for (int j = 0; j < d; ++j) {
            if (!std::getline(ss, field, ',')) throw ConfigError("short CSV row");
            v(j) = parse_double(field);
        }
        values.push_back(std::move(v));
    }
    return SampledCadlagPath(TimeGrid(std::move(times)), std::move(values));
}

}  // namespace skorohod

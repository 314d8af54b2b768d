#include "qagap/ising.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qagap/errors.hpp"

namespace qagap {

double IsingInstance::ising_energy(std::uint64_t state) const {
    double e = 0.0;
    for (const Edge& ed : edges) {
        const int zi = ((state >> ed.i) & 1) ? -1 : 1;
        const int zj = ((state >> ed.j) & 1) ? -1 : 1;
        e += ed.weight * zi * zj;
    }
    return e;
}

std::uint64_t IsingInstance::apply_swap(std::uint64_t state) const {
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i)
        out |= ((state >> i) & 1ull) << ring_swap[static_cast<std::size_t>(i)];
    return out;
}

namespace {

double parse_weight(const std::string& tok) {
    const auto slash = tok.find('/');
    if (slash == std::string::npos) return std::stod(tok);
    const double num = std::stod(tok.substr(0, slash));
    const double den = std::stod(tok.substr(slash + 1));
    if (den == 0.0) throw ConfigError("zero denominator in edge weight: " + tok);
    return num / den;
}

}  // namespace

IsingInstance read_instance(std::istream& in) {
    IsingInstance inst;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "n") {
            if (!(ls >> inst.n) || inst.n < 1 || inst.n > 63)
                throw ConfigError("instance line " + std::to_string(lineno) + ": bad n");
        } else if (key == "swap") {
            inst.ring_swap.assign(static_cast<std::size_t>(inst.n), 0);
            for (int i = 0; i < inst.n; ++i)
                if (!(ls >> inst.ring_swap[static_cast<std::size_t>(i)]))
                    throw ConfigError("instance line " + std::to_string(lineno) +
                                      ": swap needs n integers");
        } else if (key == "edge") {
            IsingInstance::Edge e;
            std::string w;
            if (!(ls >> e.i >> e.j >> w))
                throw ConfigError("instance line " + std::to_string(lineno) + ": bad edge");
            e.weight = parse_weight(w);
            inst.edges.push_back(e);
        } else {
            throw ConfigError("instance line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    if (inst.n == 0) throw ConfigError("instance file has no 'n' line");
    if (inst.ring_swap.empty()) throw ConfigError("instance file has no 'swap' line");
    return inst;
}

IsingInstance read_instance_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open instance file: " + path);
    return read_instance(f);
}

void write_instance(const IsingInstance& inst, std::ostream& out) {
    if (!inst.provenance.empty()) out << "# " << inst.provenance << "\n";
    out << "n " << inst.n << "\n";
    out << "swap";
    for (int v : inst.ring_swap) out << ' ' << v;
    out << "\n";
    auto fmt = [](double w) -> std::string {
        if (w == -1.0) return "-1";
        if (w == -0.5) return "-1/2";
        if (w == 5.0 / 6.0) return "5/6";
        std::ostringstream os;
        os.precision(17);
        os << w;
        return os.str();
    };
    for (const auto& e : inst.edges)
        out << "edge " << e.i << ' ' << e.j << ' ' << fmt(e.weight) << "\n";
}

IsingInstance canonical_two_ring(int n) {
    if (n < 8 || n % 2 != 0)
        throw InvalidModelError("canonical two-ring instances need even n >= 8");
    IsingInstance inst;
    inst.n = n;
    const int m = n / 2;
    const int c = m / 2;
    for (int off : {0, m}) {
        for (int i = 0; i < m; ++i) {
            const int j = (i + 1) % m;
            const double w = (i == c || j == c) ? -0.5 : -1.0;
            inst.edges.push_back({off + i, off + j, w});
        }
    }
    inst.edges.push_back({c, m + c, -1.0});
    inst.edges.push_back({0, m, 5.0 / 6.0});
    inst.ring_swap.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inst.ring_swap[static_cast<std::size_t>(i)] = (i + m) % n;
    std::ostringstream prov;
    prov << "two rings of " << m << "; cycle couplings -1 except -1/2 around each "
            "center spin (" << c << ", " << m + c << "); center-center rung -1; "
            "anchor-anchor rung 5/6";
    inst.provenance = prov.str();
    return inst;
}

InstanceDiagnostics validate_instance(const IsingInstance& inst) {
    InstanceDiagnostics d;
    auto fail = [&d](const std::string& msg) {
        d.ok = false;
        d.violations.push_back(msg);
    };

    if (inst.n < 2 || inst.n % 2 != 0) fail("spin count must be even and >= 2");
    if (static_cast<int>(inst.ring_swap.size()) != inst.n) {
        fail("ring-swap permutation has wrong length");
        return d;
    }

    std::vector<char> seen(static_cast<std::size_t>(inst.n), 0);
    bool perm_ok = true;
    for (int v : inst.ring_swap) {
        if (v < 0 || v >= inst.n || seen[static_cast<std::size_t>(v)]) {
            fail("ring-swap is not a permutation");
            perm_ok = false;
            break;
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    if (perm_ok) {
        for (int i = 0; i < inst.n; ++i)
            if (inst.ring_swap[static_cast<std::size_t>(inst.ring_swap[static_cast<std::size_t>(i)])] != i) {
                fail("ring-swap is not an involution");
                break;
            }
    }

    std::set<std::pair<int, int>> keys;
    std::map<std::pair<int, int>, double> weight_of;
    for (const auto& e : inst.edges) {
        if (e.i == e.j || e.i < 0 || e.j < 0 || e.i >= inst.n || e.j >= inst.n) {
            fail("edge endpoints out of range or self-loop");
            continue;
        }
        auto key = std::minmax(e.i, e.j);
        if (!keys.insert(key).second) fail("duplicate edge in instance");
        weight_of[key] = e.weight;
    }
    if (perm_ok) {
        for (const auto& [key, w] : weight_of) {
            auto mapped = std::minmax(inst.ring_swap[static_cast<std::size_t>(key.first)],
                                      inst.ring_swap[static_cast<std::size_t>(key.second)]);
            auto it = weight_of.find(mapped);
            if (it == weight_of.end() || std::abs(it->second - w) > 1e-15) {
                fail("edge set is not invariant under the ring swap");
                break;
            }
        }
    }

    const double allowed[] = {-1.0, -0.5, 5.0 / 6.0};
    bool canonical_weights = true;
    for (const auto& e : inst.edges) {
        bool ok = false;
        for (double a : allowed) ok = ok || std::abs(e.weight - a) < 1e-15;
        canonical_weights = canonical_weights && ok;
    }
    if (!canonical_weights)
        d.notes.push_back("weights outside the canonical set {-1, -1/2, 5/6}");

    // connectivity
    if (d.ok && inst.n <= 63) {
        std::vector<int> comp(static_cast<std::size_t>(inst.n), -1);
        std::vector<int> stack{0};
        comp[0] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& e : inst.edges) {
                int w = (e.i == v) ? e.j : (e.j == v ? e.i : -1);
                if (w >= 0 && comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = 0;
                    stack.push_back(w);
                }
            }
        }
        for (int i = 0; i < inst.n; ++i)
            if (comp[static_cast<std::size_t>(i)] < 0) {
                fail("instance graph is disconnected");
                break;
            }
    }

    if (d.ok && inst.n <= 20) {
        const std::uint64_t dim = 1ull << inst.n;
        double e0 = 1e300, e1 = 1e300;
        for (std::uint64_t x = 0; x < dim; ++x) {
            const double e = inst.ising_energy(x);
            if (e < e0 - 1e-10) {
                e1 = e0;
                e0 = e;
            } else if (e > e0 + 1e-10 && e < e1 - 1e-10) {
                e1 = e;
            }
        }
        for (std::uint64_t x = 0; x < dim; ++x) {
            const double e = inst.ising_energy(x);
            if (std::abs(e - e0) < 1e-10) {
                ++d.ground_degeneracy;
                if (d.ground_states.size() < 16) d.ground_states.push_back(x);
            } else if (std::abs(e - e1) < 1e-10) {
                ++d.first_excited_degeneracy;
            }
        }
        d.ground_energy = e0;
        d.first_excited_gap = e1 - e0;
        if (canonical_weights) {
            const std::uint64_t all_ones = (1ull << inst.n) - 1;
            const bool uniform_ground =
                d.ground_degeneracy == 2 &&
                std::find(d.ground_states.begin(), d.ground_states.end(), 0ull) !=
                    d.ground_states.end() &&
                std::find(d.ground_states.begin(), d.ground_states.end(), all_ones) !=
                    d.ground_states.end();
            if (!uniform_ground)
                fail("canonical instance must have the doubly-degenerate aligned ground space");
        }
    } else if (d.ok) {
        d.notes.push_back("degeneracy contract skipped (n > 20)");
    }
    return d;
}

OrbitBasis::OrbitBasis(const IsingInstance& inst, SectorCharacter sector, int max_qubits)
    : inst_(inst), sector_(sector) {
    if (inst.n > max_qubits)
        throw ResourceError("orbit basis over " + std::to_string(inst.n) +
                            " qubits exceeds the configured maximum of " +
                            std::to_string(max_qubits));
    const std::uint64_t dim = 1ull << inst.n;
    index_.assign(dim, kDropped);
    sign_.assign(dim, 0.0f);

    const double cp = sector.flip;
    const double cr = sector.swap;

    for (std::uint64_t x = 0; x < dim; ++x) {
        if (index_[x] != kDropped || sign_[x] != 0.0f) continue;
        const std::uint64_t rx = inst_.apply_swap(x);
        const std::uint64_t images[4] = {x, inst_.apply_flip(x), rx, inst_.apply_flip(rx)};
        const double chars[4] = {1.0, cp, cr, cp * cr};
        const std::uint64_t rep = *std::min_element(images, images + 4);
        if (rep != x) continue;  // visited via its representative later

        // stabilizer character sum decides whether the orbit survives
        bool kept = true;
        for (int g = 1; g < 4; ++g)
            if (images[g] == x && chars[g] < 0) kept = false;

        std::uint64_t uniq[4];
        int usz = 0;
        for (int g = 0; g < 4; ++g) {
            bool dup = false;
            for (int k = 0; k < usz; ++k) dup = dup || uniq[k] == images[g];
            if (!dup) uniq[usz++] = images[g];
        }

        if (!kept) {
            for (int k = 0; k < usz; ++k) sign_[uniq[k]] = 2.0f;  // mark visited, dropped
            continue;
        }
        const auto id = static_cast<std::uint32_t>(reps_.size());
        reps_.push_back(x);
        sizes_.push_back(usz);
        rep_energy_.push_back(inst_.ising_energy(x));
        for (int g = 0; g < 4; ++g) {
            index_[images[g]] = id;
            sign_[images[g]] = static_cast<float>(chars[g]);
        }
    }
    // clear the visited-mark sentinel on dropped orbits
    for (std::uint64_t x = 0; x < dim; ++x)
        if (sign_[x] == 2.0f) sign_[x] = 0.0f;

    sqrt_size_.resize(reps_.size());
    for (std::size_t k = 0; k < reps_.size(); ++k)
        sqrt_size_[k] = std::sqrt(static_cast<double>(sizes_[k]));
}

void OrbitBasis::apply_terms(double wd, double wi, double wc, const Vector& x,
                             Vector& y) const {
    if (x.size() != dim()) throw InvalidModelError("sector vector dimension mismatch");
    y.setZero(dim());
    const Eigen::Index m = dim();
    for (Eigen::Index i = 0; i < m; ++i) {
        const double xi = x[i];
        const std::uint64_t rep = reps_[static_cast<std::size_t>(i)];
        const double si = sqrt_size_[static_cast<std::size_t>(i)];
        y[i] += wi * rep_energy_[static_cast<std::size_t>(i)] * xi;
        if (wd != 0.0) {
            for (int b = 0; b < inst_.n; ++b) {
                const std::uint64_t t = rep ^ (1ull << b);
                const std::uint32_t j = index_[t];
                if (j == kDropped) continue;
                y[j] += wd * sign_[t] * (si / sqrt_size_[j]) * xi;
            }
        }
        if (wc != 0.0) {
            for (const auto& e : inst_.edges) {
                const std::uint64_t t = rep ^ (1ull << e.i) ^ (1ull << e.j);
                const std::uint32_t j = index_[t];
                if (j == kDropped) continue;
                y[j] += wc * sign_[t] * (si / sqrt_size_[j]) * xi;
            }
        }
    }
}

}  // namespace qagap

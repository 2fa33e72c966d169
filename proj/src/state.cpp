#include "eraserlab/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eraserlab {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("CMatrix: shape mismatch in product");
    CMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cdouble v = (*this)(r, k);
            if (v == cdouble{}) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
        }
    return out;
}

bool CMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    const CMatrix prod = adjoint() * (*this);
    return prod.max_abs_diff(identity(rows_)) < tol;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("CMatrix: shape mismatch in comparison");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

double vector_norm(const std::vector<cdouble>& v) {
    double sum = 0.0;
    for (const cdouble& a : v) sum += std::norm(a);
    return std::sqrt(sum);
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits, std::vector<cdouble> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits_ == 0 || n_qubits_ > kMaxQubits)
        throw std::invalid_argument("StateVector: register size must be in [1, 8]");
    if (amplitudes_.size() != (std::size_t{1} << n_qubits_))
        throw std::invalid_argument("StateVector: amplitude count must be 2^n_qubits");
    const double n = vector_norm(amplitudes_);
    if (std::abs(n - 1.0) > 1e-6)
        throw std::invalid_argument("StateVector: not normalized");
    // Renormalize to keep the 1e-12 invariant through gate chains.
    for (cdouble& a : amplitudes_) a /= n;
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    std::vector<cdouble> amps(std::size_t{1} << n_qubits);
    amps.at(index) = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::bell() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector(2, {r, 0.0, 0.0, r});
}

double StateVector::norm() const { return vector_norm(amplitudes_); }

double StateVector::distance_up_to_phase(const StateVector& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("distance: dimension mismatch");
    cdouble overlap = 0.0;
    for (std::size_t k = 0; k < dim(); ++k)
        overlap += std::conj(other.amplitudes_[k]) * amplitudes_[k];
    cdouble phase = std::abs(overlap) > 1e-15 ? overlap / std::abs(overlap) : cdouble{1.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < dim(); ++k)
        worst = std::max(worst, std::abs(amplitudes_[k] - phase * other.amplitudes_[k]));
    return worst;
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
    const std::size_t d = entries_.rows();
    if (d == 0 || d != entries_.cols() || !is_power_of_two(d))
        throw std::invalid_argument("DensityMatrix: must be square with power-of-two dim");
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r; c < d; ++c)
            if (std::abs(entries_(r, c) - std::conj(entries_(c, r))) > 1e-9)
                throw std::invalid_argument("DensityMatrix: not Hermitian");
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i) tr += entries_(i, i).real();
    if (std::abs(tr - 1.0) > 1e-9)
        throw std::invalid_argument("DensityMatrix: trace must be 1");
}

double DensityMatrix::trace_real() const {
    double tr = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) tr += entries_(i, i).real();
    return tr;
}

void PartitionSpec::validate() const {
    const std::size_t n = n_qubits();
    std::vector<int> seen(n, 0);
    auto mark = [&](const std::vector<std::size_t>& qs) {
        for (std::size_t q : qs) {
            if (q >= n) throw std::invalid_argument("PartitionSpec: qubit index out of range");
            if (seen[q]++) throw std::invalid_argument("PartitionSpec: qubit assigned twice");
        }
    };
    mark(a_qubits);
    mark(b_qubits);
    mark(t_qubits);
}

StateVector tensor(const StateVector& s1, const StateVector& s2) {
    const std::size_t n = s1.n_qubits() + s2.n_qubits();
    if (n > kMaxQubits) throw std::invalid_argument("tensor: register exceeds 8 qubits");
    std::vector<cdouble> amps(std::size_t{1} << n);
    for (std::size_t i = 0; i < s1.dim(); ++i) {
        if (s1.amplitude(i) == cdouble{}) continue;
        for (std::size_t j = 0; j < s2.dim(); ++j)
            amps[(i << s2.n_qubits()) | j] = s1.amplitude(i) * s2.amplitude(j);
    }
    return StateVector(n, std::move(amps));
}

DensityMatrix density_matrix(const StateVector& s) {
    CMatrix m(s.dim(), s.dim());
    for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t c = 0; c < s.dim(); ++c)
            m(r, c) = s.amplitude(r) * std::conj(s.amplitude(c));
    return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep,
                            std::size_t n_qubits) {
    if (rho.dim() != (std::size_t{1} << n_qubits))
        throw std::invalid_argument("partial_trace: dimension does not match register size");
    std::vector<int> kept(n_qubits, 0);
    for (std::size_t q : keep) {
        if (q >= n_qubits) throw std::invalid_argument("partial_trace: keep index out of range");
        if (kept[q]++) throw std::invalid_argument("partial_trace: duplicate keep index");
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n_qubits; ++q)
        if (!kept[q]) traced.push_back(q);

    const std::size_t out_dim = std::size_t{1} << keep.size();
    const std::size_t tr_dim = std::size_t{1} << traced.size();
    // Compose a full-register index from kept-subsystem and traced-subsystem indices.
    auto full_index = [&](std::size_t k_idx, std::size_t t_idx) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
            if ((k_idx >> (keep.size() - 1 - i)) & 1u)
                idx |= std::size_t{1} << (n_qubits - 1 - keep[i]);
        for (std::size_t i = 0; i < traced.size(); ++i)
            if ((t_idx >> (traced.size() - 1 - i)) & 1u)
                idx |= std::size_t{1} << (n_qubits - 1 - traced[i]);
        return idx;
    };

    CMatrix out(out_dim, out_dim);
    for (std::size_t r = 0; r < out_dim; ++r)
        for (std::size_t c = 0; c < out_dim; ++c) {
            cdouble sum = 0.0;
            for (std::size_t t = 0; t < tr_dim; ++t)
                sum += rho(full_index(r, t), full_index(c, t));
            out(r, c) = sum;
        }
    return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep,
                            const PartitionSpec& layout) {
    layout.validate();
    if (rho.dim() != (std::size_t{1} << layout.n_qubits()))
        throw std::invalid_argument("partial_trace: rho does not match the partition layout");
    return partial_trace(rho, keep, layout.n_qubits());
}

EigenSystem hermitian_eigensystem(const CMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols() || n == 0 || n > 16)
        throw std::invalid_argument("eigensolve: square matrix up to dim 16 required");
    if (m.max_abs_diff(m.adjoint()) > 1e-9)
        throw std::invalid_argument("eigensolve: matrix is not Hermitian");

    CMatrix a = m;
    CMatrix v = CMatrix::identity(n);

    auto off_norm = [&]() {
        double sum = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) sum += std::norm(a(p, q));
        return std::sqrt(2.0 * sum);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > 1e-13; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const cdouble phase = apq / mag;  // apq = mag * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Rotation J: J(p,p)=c, J(p,q)=s, J(q,p)=-s*conj(phase), J(q,q)=c*conj(phase).
                const cdouble jqp = -s * std::conj(phase);
                const cdouble jqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {  // A <- A J (columns p, q)
                    const cdouble akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * s + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^dag A (rows p, q)
                    const cdouble apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = s * apk + std::conj(jqq) * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {  // V <- V J
                    const cdouble vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * s + vkq * jqq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    return out;
}

EigenSystem eigensolve_hermitian(const DensityMatrix& m) {
    EigenSystem sys = hermitian_eigensystem(m.entries());
    for (double& lam : sys.eigenvalues) {
        if (lam < -1e-10 || lam > 1.0 + 1e-10)
            throw std::domain_error("eigensolve: density matrix eigenvalue outside [0,1]");
        lam = std::clamp(lam, 0.0, 1.0);
    }
    return sys;
}

SchmidtDecomposition schmidt_decompose(const StateVector& s, const PartitionSpec& cut) {
    cut.validate();
    if (!cut.t_qubits.empty())
        throw std::invalid_argument("schmidt_decompose: T part of the cut must be empty");
    if (cut.a_qubits.empty() || cut.b_qubits.empty())
        throw std::invalid_argument("schmidt_decompose: both sides must be nonempty");
    if (cut.n_qubits() != s.n_qubits())
        throw std::invalid_argument("schmidt_decompose: cut does not match register size");

    const bool a_smaller = cut.a_qubits.size() <= cut.b_qubits.size();
    const std::vector<std::size_t>& small = a_smaller ? cut.a_qubits : cut.b_qubits;
    const std::vector<std::size_t>& large = a_smaller ? cut.b_qubits : cut.a_qubits;
    const std::size_t sd = std::size_t{1} << small.size();
    const std::size_t ld = std::size_t{1} << large.size();

    // M[small][large] = amplitude.
    CMatrix coef(sd, ld);
    const std::size_t n = s.n_qubits();
    for (std::size_t k = 0; k < s.dim(); ++k) {
        std::size_t si = 0, li = 0;
        for (std::size_t i = 0; i < small.size(); ++i)
            si = (si << 1) | static_cast<std::size_t>(qubit_bit(k, small[i], n));
        for (std::size_t i = 0; i < large.size(); ++i)
            li = (li << 1) | static_cast<std::size_t>(qubit_bit(k, large[i], n));
        coef(si, li) = s.amplitude(k);
    }

    CMatrix red(sd, sd);  // reduced density matrix of the smaller side
    for (std::size_t r = 0; r < sd; ++r)
        for (std::size_t c = 0; c < sd; ++c) {
            cdouble sum = 0.0;
            for (std::size_t l = 0; l < ld; ++l) sum += coef(r, l) * std::conj(coef(c, l));
            red(r, c) = sum;
        }

    EigenSystem sys = hermitian_eigensystem(red);

    SchmidtDecomposition out;
    for (std::size_t k = 0; k < sd; ++k) {
        const double lam = std::max(sys.eigenvalues[k], 0.0);
        out.coefficients.push_back(std::sqrt(lam));
        std::vector<cdouble> sv(sd);
        for (std::size_t r = 0; r < sd; ++r) sv[r] = sys.eigenvectors(r, k);
        // Partner vector by contraction: |l_k> = <sv_k| M / c_k.
        std::vector<cdouble> lv(ld);
        for (std::size_t l = 0; l < ld; ++l) {
            cdouble sum = 0.0;
            for (std::size_t r = 0; r < sd; ++r) sum += std::conj(sv[r]) * coef(r, l);
            lv[l] = sum;
        }
        const double ck = out.coefficients.back();
        if (ck > 1e-12) {
            for (cdouble& x : lv) x /= ck;
        } else {
            lv.assign(ld, cdouble{});
        }
        if (a_smaller) {
            out.left_vectors.push_back(std::move(sv));
            out.right_vectors.push_back(std::move(lv));
        } else {
            out.left_vectors.push_back(std::move(lv));
            out.right_vectors.push_back(std::move(sv));
        }
    }

    // Zero-coefficient partner vectors: orthonormal completion by Gram-Schmidt.
    std::vector<std::vector<cdouble>>& partner = a_smaller ? out.right_vectors : out.left_vectors;
    std::size_t next_basis = 0;
    for (std::size_t k = 0; k < partner.size(); ++k) {
        if (out.coefficients[k] > 1e-12) continue;
        std::vector<cdouble> cand;
        double nrm = 0.0;
        while (nrm < 1e-6 && next_basis < ld) {
            cand.assign(ld, cdouble{});
            cand[next_basis++] = 1.0;
            for (std::size_t j = 0; j < partner.size(); ++j) {
                if (j == k) continue;
                cdouble ov = 0.0;
                for (std::size_t l = 0; l < ld; ++l) ov += std::conj(partner[j][l]) * cand[l];
                for (std::size_t l = 0; l < ld; ++l) cand[l] -= ov * partner[j][l];
            }
            nrm = vector_norm(cand);
        }
        if (nrm >= 1e-6) {
            for (cdouble& x : cand) x /= nrm;
            partner[k] = std::move(cand);
        }
    }
    return out;
}

StateVector parse_state(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("state file: empty input");
    std::istringstream hdr(line);
    std::string kw;
    std::size_t n = 0;
    if (!(hdr >> kw >> n) || kw != "qubits" || n == 0 || n > kMaxQubits)
        throw std::invalid_argument("state file: expected `qubits N` header");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cdouble> amps;
    amps.reserve(dim);
    while (std::getline(in, line)) {
        if (line.empty() && amps.size() == dim) continue;  // trailing newline
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        if (!(row >> re >> im)) throw std::invalid_argument("state file: malformed amplitude line");
        std::string extra;
        if (row >> extra) throw std::invalid_argument("state file: malformed amplitude line");
        amps.emplace_back(re, im);
    }
    if (amps.size() != dim) throw std::invalid_argument("state file: wrong amplitude count");
    double nn = vector_norm(amps);
    if (std::abs(nn - 1.0) > 1e-6) throw std::invalid_argument("state file: state not normalized");
    return StateVector(n, std::move(amps));
}

StateVector load_state(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open state file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_state(buf.str());
}

std::string render_state(const StateVector& s) {
    std::ostringstream out;
    out << "qubits " << s.n_qubits() << "\n";
    char buf[64];
    for (const cdouble& a : s.amplitudes()) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", a.real(), a.imag());
        out << buf;
    }
    return out.str();
}

void save_state(const StateVector& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write state file: " + path);
    f << render_state(s);
}

}  // namespace eraserlab

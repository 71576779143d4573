#include "spectral.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "io.hpp"

namespace ptkr {

Eigen::VectorXcd floquet_eigenvalues(const FloquetDense& f, const EigensolverBackend& backend) {
    require(f.matrix.allFinite(), ErrorCode::invalid_argument, "Floquet matrix has non-finite entries");
    return backend.eigenvalues(f.matrix);
}

QuasienergySpectrum quasienergies(const Eigen::VectorXcd& mus) {
    QuasienergySpectrum spectrum;
    spectrum.mus = mus;
    spectrum.epsilons.resize(mus.size());
    double alpha = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < mus.size(); ++i) {
        Complex mu = mus[i];
        require(mu != Complex(0.0, 0.0), ErrorCode::invalid_argument,
                "zero Floquet eigenvalue; operator is singular");
        // eps = i ln mu: Re eps = -arg(mu) in [-pi, pi), Im eps = ln|mu|.
        double re = -std::arg(mu);
        if (re >= M_PI) re -= 2.0 * M_PI;
        double im = std::log(std::abs(mu));
        spectrum.epsilons[i] = {re, im};
        alpha = std::max(alpha, im);
    }
    spectrum.alpha = alpha;
    return spectrum;
}

QuasienergySpectrum compute_spectrum(const RotorParams& params, std::span<const double> jitter,
                                     const EigensolverBackend& backend) {
    FloquetDense f = build_dense(params, jitter);
    return quasienergies(floquet_eigenvalues(f, backend));
}

bool pt_broken(const QuasienergySpectrum& spectrum, double threshold) {
    return spectrum.alpha > threshold;
}

void write_spectrum_csv(const QuasienergySpectrum& spectrum, std::ostream& out) {
    out << "index,re_mu,im_mu,re_eps,im_eps\n";
    for (Eigen::Index i = 0; i < spectrum.mus.size(); ++i) {
        out << i << ',' << fmt17(spectrum.mus[i].real()) << ',' << fmt17(spectrum.mus[i].imag())
            << ',' << fmt17(spectrum.epsilons[i].real()) << ','
            << fmt17(spectrum.epsilons[i].imag()) << '\n';
    }
}

QuasienergySpectrum read_spectrum_csv(std::istream& in) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::io_error, "empty spectrum file");
    require(line.rfind("index,", 0) == 0, ErrorCode::io_error, "missing spectrum CSV header");
    std::vector<Complex> mus, epsilons;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double v[5];
        for (int c = 0; c < 5; ++c) {
            require(static_cast<bool>(std::getline(row, field, ',')), ErrorCode::io_error,
                    "short spectrum CSV row");
            v[c] = std::stod(field);
        }
        mus.emplace_back(v[1], v[2]);
        epsilons.emplace_back(v[3], v[4]);
    }
    QuasienergySpectrum spectrum;
    spectrum.mus = Eigen::Map<Eigen::VectorXcd>(mus.data(), static_cast<Eigen::Index>(mus.size()));
    spectrum.epsilons =
        Eigen::Map<Eigen::VectorXcd>(epsilons.data(), static_cast<Eigen::Index>(epsilons.size()));
    double alpha = -std::numeric_limits<double>::infinity();
    for (Complex e : epsilons) alpha = std::max(alpha, e.imag());
    spectrum.alpha = alpha;
    return spectrum;
}

}  // namespace ptkr

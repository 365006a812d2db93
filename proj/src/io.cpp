#include "pathlaw/io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "pathlaw/error.hpp"

namespace pathlaw::io {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{})
        throw NumericError("cannot format number");
    return std::string(buf.data(), ptr);
}

json to_json(const ModelParams& p) {
    return std::visit(
        [](const auto& q) -> json {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, GammaParams>)
                return {{"family", "gamma"}, {"theta", q.theta}, {"eta", q.eta}};
            else if constexpr (std::is_same_v<T, WeibullParams>)
                return {{"family", "weibull"}, {"lambda", q.lambda}, {"kappa", q.kappa}};
            else if constexpr (std::is_same_v<T, LogNormalParams>)
                return {{"family", "lognormal"}, {"mu", q.mu}, {"xi", q.xi}};
            else
                return {{"family", "gengamma"}, {"sigma", q.sigma}, {"alpha", q.alpha}, {"beta", q.beta}};
        },
        p);
}

ModelParams model_params_from_json(const json& j) {
    try {
        const auto family = parse_family(j.at("family").get<std::string>());
        if (!family)
            throw ParseError("unknown family '" + j.at("family").get<std::string>() + "'");
        ModelParams p;
        switch (*family) {
        case Family::gamma:
            p = GammaParams{j.at("theta").get<double>(), j.at("eta").get<double>()};
            break;
        case Family::weibull:
            p = WeibullParams{j.at("lambda").get<double>(), j.at("kappa").get<double>()};
            break;
        case Family::lognormal:
            p = LogNormalParams{j.at("mu").get<double>(), j.at("xi").get<double>()};
            break;
        case Family::gengamma:
            p = GenGammaParams{j.at("sigma").get<double>(), j.at("alpha").get<double>(), j.at("beta").get<double>()};
            break;
        }
        validate(p);
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("model parameters: ") + e.what());
    }
}

json to_json(const FitResult& r) {
    return {{"family", family_name(r.family)},
            {"params", to_json(r.params)},
            {"log_likelihood", r.log_likelihood},
            {"hellinger", r.hellinger},
            {"converged", r.converged},
            {"iterations", r.iterations},
            {"K", r.K}};
}

FitResult fit_result_from_json(const json& j) {
    try {
        FitResult r;
        r.params = model_params_from_json(j.at("params"));
        r.family = family_of(r.params);
        r.log_likelihood = j.at("log_likelihood").get<double>();
        r.hellinger = j.at("hellinger").get<double>();
        r.converged = j.at("converged").get<bool>();
        r.iterations = j.at("iterations").get<std::size_t>();
        r.K = j.at("K").get<std::size_t>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("fit result: ") + e.what());
    }
}

void write_histogram_csv(std::ostream& out, const DistanceHistogram& h) {
    out << "distance,count\n";
    const std::size_t first = h.count(0) > 0 ? 0 : 1;
    for (std::size_t k = first; k <= h.max_distance(); ++k)
        out << k << ',' << h.count(k) << '\n';
}

void write_trace_csv(std::ostream& out, const OutbreakTrace& trace) {
    out << "t,newly_infected\n";
    for (std::size_t t = 0; t < trace.newly_infected.size(); ++t)
        out << t << ',' << trace.newly_infected[t] << '\n';
}

void write_ensemble_csv(std::ostream& out, std::span<const OutbreakTrace> traces, std::span<const double> average) {
    out << "replicate,t,newly_infected\n";
    for (std::size_t r = 0; r < traces.size(); ++r)
        for (std::size_t t = 0; t < traces[r].newly_infected.size(); ++t)
            out << r << ',' << t << ',' << traces[r].newly_infected[t] << '\n';
    for (std::size_t t = 0; t < average.size(); ++t)
        out << "mean," << t << ',' << format_double(average[t]) << '\n';
}

void write_embedding_csv(std::ostream& out, std::span<const EmbeddingPoint> points) {
    out << "name,sigma,alpha,beta,hellinger\n";
    for (const auto& p : points)
        out << p.name << ',' << format_double(p.sigma) << ',' << format_double(p.alpha) << ','
            << format_double(p.beta) << ',' << format_double(p.hellinger) << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    for (auto& f : fields)
        while (!f.empty() && (f.back() == '\r' || f.back() == ' '))
            f.pop_back();
    return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("expected a number, got '" + s + "'", line_no);
    return v;
}

} // namespace

std::vector<double> read_counts_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line != "\r")
            header = split_csv(line);
    }
    if (header.empty())
        throw EmptyInputError("counts CSV is empty");

    const bool ensemble = header.size() == 3 && header[0] == "replicate";
    const bool plain = header.size() == 2 && (header[0] == "distance" || header[0] == "t");
    if (!ensemble && !plain)
        throw ParseError("unrecognised CSV header '" + line + "'", line_no);

    std::vector<double> counts;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields", line_no);
        if (ensemble) {
            if (fields[0] != "mean")
                continue;
            fields.erase(fields.begin());
        }
        const double index = parse_number(fields[0], line_no);
        const double value = parse_number(fields[1], line_no);
        if (index < 0 || index != static_cast<double>(static_cast<std::size_t>(index)))
            throw ParseError("bin index must be a nonnegative integer", line_no);
        if (!(value >= 0.0))
            throw ParseError("counts must be nonnegative", line_no);
        const auto k = static_cast<std::size_t>(index);
        if (counts.size() <= k)
            counts.resize(k + 1, 0.0);
        counts[k] += value;
    }
    if (counts.empty())
        throw EmptyInputError("counts CSV has no rows");
    return counts;
}

} // namespace pathlaw::io

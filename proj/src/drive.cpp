#include "ionx/drive.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ionx/format.hpp"

namespace ionx {

DriveSignal::DriveSignal(StepSignal s) : variant_(s) {}

DriveSignal::DriveSignal(SquareSignal s) : variant_(s) {
    if (!(s.period > 0.0)) throw std::invalid_argument("square period must be positive");
    if (!(s.duty > 0.0 && s.duty < 1.0)) throw std::invalid_argument("duty must be in (0,1)");
}

DriveSignal::DriveSignal(PiecewiseSignal s) : variant_(std::move(s)) {
    const auto& pts = std::get<PiecewiseSignal>(variant_).breakpoints;
    if (pts.empty()) throw std::invalid_argument("piecewise drive needs breakpoints");
    for (std::size_t j = 1; j < pts.size(); ++j) {
        if (!(pts[j].first > pts[j - 1].first)) {
            throw std::invalid_argument("piecewise breakpoints must be strictly increasing");
        }
    }
}

double DriveSignal::eval(double tau) const {
    if (tau < 0.0) throw std::out_of_range("drive evaluated at negative time");
    if (const auto* st = std::get_if<StepSignal>(&variant_)) {
        return tau > 0.0 ? st->amplitude : 0.0;
    }
    if (const auto* sq = std::get_if<SquareSignal>(&variant_)) {
        const double frac = tau / sq->period - std::floor(tau / sq->period);
        return frac < sq->duty ? sq->amplitude : 0.0;
    }
    const auto& pts = std::get<PiecewiseSignal>(variant_).breakpoints;
    double value = 0.0;
    for (const auto& [t, v] : pts) {
        if (t <= tau) value = v;
        else break;
    }
    return value;
}

std::vector<double> DriveSignal::breakpoints_between(double tau0, double tau1) const {
    std::vector<double> out;
    if (!(tau1 > tau0)) return out;
    if (std::holds_alternative<StepSignal>(variant_)) {
        return out;  // the only jump is at tau = 0+, where integration starts
    }
    if (const auto* sq = std::get_if<SquareSignal>(&variant_)) {
        const double p = sq->period;
        for (long j = std::max(0L, static_cast<long>(std::floor(tau0 / p))); ; ++j) {
            const double on = static_cast<double>(j) * p;
            const double off = on + sq->duty * p;
            if (on > tau1 && off > tau1) break;
            if (on > tau0 && on <= tau1) out.push_back(on);
            if (off > tau0 && off <= tau1) out.push_back(off);
        }
        return out;
    }
    for (const auto& [t, v] : std::get<PiecewiseSignal>(variant_).breakpoints) {
        (void)v;
        if (t > tau0 && t <= tau1) out.push_back(t);
    }
    return out;
}

std::string DriveSignal::to_string() const {
    std::ostringstream os;
    if (const auto* st = std::get_if<StepSignal>(&variant_)) {
        os << "step(" << format_double(st->amplitude) << ")";
    } else if (const auto* sq = std::get_if<SquareSignal>(&variant_)) {
        os << "square(" << format_double(sq->amplitude) << ", " << format_double(sq->period)
           << ", " << format_double(sq->duty) << ")";
    } else {
        os << "piecewise(";
        const auto& pts = std::get<PiecewiseSignal>(variant_).breakpoints;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j) os << ", ";
            os << format_double(pts[j].first) << ":" << format_double(pts[j].second);
        }
        os << ")";
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    return parts;
}

std::string strip(const std::string& text) {
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return text.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("bad number in drive spec: " + text);
    return v;
}

}  // namespace

DriveSignal DriveSignal::parse(const std::string& text) {
    const std::string t = strip(text);
    const std::size_t open = t.find('(');
    if (open == std::string::npos || t.back() != ')') {
        throw std::invalid_argument("drive spec must look like name(args): " + text);
    }
    const std::string name = strip(t.substr(0, open));
    const std::string args = t.substr(open + 1, t.size() - open - 2);
    std::vector<std::string> parts;
    for (const auto& p : split(args, ',')) parts.push_back(strip(p));

    if (name == "step") {
        if (parts.size() != 1) throw std::invalid_argument("step takes one argument");
        return DriveSignal::step(parse_number(parts[0]));
    }
    if (name == "square") {
        if (parts.size() != 3) throw std::invalid_argument("square takes three arguments");
        return DriveSignal::square(parse_number(parts[0]), parse_number(parts[1]),
                                   parse_number(parts[2]));
    }
    if (name == "piecewise") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : parts) {
            const auto kv = split(p, ':');
            if (kv.size() != 2) throw std::invalid_argument("piecewise point must be tau:value");
            pts.emplace_back(parse_number(strip(kv[0])), parse_number(strip(kv[1])));
        }
        return DriveSignal::piecewise(std::move(pts));
    }
    throw std::invalid_argument("unknown drive kind: " + name);
}

}  // namespace ionx

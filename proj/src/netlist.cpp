#include "ionx/netlist.hpp"

#include <sstream>
#include <stdexcept>

#include "ionx/faces.hpp"
#include "ionx/format.hpp"

namespace ionx {

std::size_t Netlist::count_type(char type) const {
    std::size_t n = 0;
    for (const auto& e : elements) {
        if (e.type == type) ++n;
    }
    return n;
}

namespace {

std::string node(const char* prefix, std::size_t k) {
    return std::string(prefix) + "_" + std::to_string(k);
}

}  // namespace

Netlist export_netlist(const DimensionlessSystem& s, const CompartmentGrid& g,
                       const StateVector& eq, const DriveMode& mode) {
    if (eq.size() != g.size()) throw std::invalid_argument("state/grid size mismatch");
    const std::size_t n = g.size();
    const bool potentiostatic = mode.kind() == DriveMode::Kind::Potentiostatic;

    Netlist nl;
    nl.comments.push_back("* ion-exchange membrane compartment network");
    nl.comments.push_back(std::string("* mode=") +
                          (potentiostatic ? "potentiostatic" : "galvanostatic") +
                          " N=" + std::to_string(n));

    std::vector<FaceEval> faces(n + 1);
    for (std::size_t f = 0; f <= n; ++f) faces[f] = eval_face(g, s, eq, f);

    // Bath concentrations: independent voltage sources at the outer faces.
    const double c0 = s.bulk_concentration;
    nl.elements.push_back({'V', "Vc1L", {node("c1b", 0), "0"}, {c0}});
    nl.elements.push_back({'V', "Vc2L", {node("c2b", 0), "0"}, {c0}});
    nl.elements.push_back({'V', "Vc1R", {node("c1b", n), "0"}, {c0}});
    nl.elements.push_back({'V', "Vc2R", {node("c2b", n), "0"}, {c0}});

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kk = k + 1;  // 1-based names
        const double dk = g.width(k);
        const double half = 0.5 * dk;
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const std::string ci = "c" + std::to_string(i + 1);
            const std::string cb = ci + "b";
            const double dip = g.diffusion(i, k, s);
            const double zi = s.valences[i];
            const double rd = dk / (2.0 * dip);
            nl.elements.push_back({'R', "Rd" + std::to_string(i + 1) + "m_" + std::to_string(kk),
                                   {node(cb.c_str(), k), node(ci.c_str(), kk)},
                                   {rd}});
            nl.elements.push_back({'R', "Rd" + std::to_string(i + 1) + "p_" + std::to_string(kk),
                                   {node(ci.c_str(), kk), node(cb.c_str(), kk)},
                                   {rd}});
            // Migration sources: current = gain * (V(ctrl+) - V(ctrl-)), with the
            // face concentration folded into the gain at the exported state.
            const double gain_m = dip * zi * faces[k].species[i].conc / half;
            const double gain_p = dip * zi * faces[k + 1].species[i].conc / half;
            nl.elements.push_back({'G', "GJe" + std::to_string(i + 1) + "m_" + std::to_string(kk),
                                   {node(cb.c_str(), k), node(ci.c_str(), kk),
                                    node("phib", k), node("phi", kk)},
                                   {gain_m}});
            nl.elements.push_back({'G', "GJe" + std::to_string(i + 1) + "p_" + std::to_string(kk),
                                   {node(ci.c_str(), kk), node(cb.c_str(), kk),
                                    node("phi", kk), node("phib", k + 1)},
                                   {gain_p}});
        }
        nl.elements.push_back({'C', "Cd_" + std::to_string(kk),
                               {node("c1", kk), "0"},
                               {dk}});
        nl.elements.push_back({'R', "Rp_" + std::to_string(kk),
                               {node("phib", k), node("phib", k + 1)},
                               {dk / (2.0 * s.permittivity)}});
        // Stored charge: current = gain*(V(c1_k) - V(c2_k)) + offset, which is
        // -delta_k*(z1 c1 + z2 c2 - theta) for the binary z = +/-1 electrolyte.
        nl.elements.push_back({'G', "GJp_" + std::to_string(kk),
                               {node("phi", kk), "0", node("c1", kk), node("c2", kk)},
                               {-dk, dk * g.theta(k, s)}});
    }

    // Boundary subcircuit: displacement capacitor C1 (node d_left holds
    // D(-delta/lambda) as a voltage), faradaic source F_If, and either the
    // applied-potential source with H_D or the applied-current source with G_D.
    double faradaic = 0.0;
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        faradaic += s.valences[i] * faces[0].species[i].flux;
    }
    nl.elements.push_back({'C', "C1", {"d_left", "0"}, {1.0}});
    nl.elements.push_back({'F', "FIf", {"d_left", "0"}, {faradaic}});
    if (potentiostatic) {
        nl.elements.push_back(
            {'V', "VphiA", {node("phib", 0), "0"}, {eq.phi_applied}});
        nl.elements.push_back({'G', "HD", {"iout", "0", "d_left", "0"}, {1.0}});
    } else {
        nl.elements.push_back({'I', "Iapp", {"d_left", "0"}, {mode.signal().eval(eq.tau)}});
        nl.elements.push_back({'G', "GD", {node("phib", 0), "0", "d_left", "0"}, {1.0}});
    }
    return nl;
}

std::string netlist_to_text(const Netlist& nl) {
    std::string out;
    for (const auto& c : nl.comments) {
        out += c;
        out += '\n';
    }
    for (const auto& e : nl.elements) {
        out += e.type;
        out += ' ';
        out += e.name;
        for (const auto& nd : e.nodes) {
            out += ' ';
            out += nd;
        }
        for (double p : e.params) {
            out += ' ';
            out += format_double(p);
        }
        out += '\n';
    }
    return out;
}

Netlist parse_netlist(const std::string& text) {
    Netlist nl;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '*') {
            nl.comments.push_back(line);
            continue;
        }
        std::stringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens[0].size() != 1) {
            throw std::invalid_argument("netlist line " + std::to_string(lineno) +
                                        ": bad element type " + tokens[0]);
        }
        NetlistElement e;
        e.type = tokens[0][0];
        std::size_t node_count = 0;
        std::size_t min_params = 1, max_params = 1;
        switch (e.type) {
            case 'R': case 'C': case 'V': case 'I': case 'F':
                node_count = 2;
                break;
            case 'G':
                node_count = 4;
                max_params = 2;
                break;
            default:
                throw std::invalid_argument("netlist line " + std::to_string(lineno) +
                                            ": unknown element type");
        }
        if (tokens.size() < 2 + node_count + min_params ||
            tokens.size() > 2 + node_count + max_params) {
            throw std::invalid_argument("netlist line " + std::to_string(lineno) +
                                        ": wrong field count");
        }
        e.name = tokens[1];
        for (std::size_t j = 0; j < node_count; ++j) e.nodes.push_back(tokens[2 + j]);
        for (std::size_t j = 2 + node_count; j < tokens.size(); ++j) {
            std::size_t pos = 0;
            const double v = std::stod(tokens[j], &pos);
            if (pos != tokens[j].size()) {
                throw std::invalid_argument("netlist line " + std::to_string(lineno) +
                                            ": bad numeric field " + tokens[j]);
            }
            e.params.push_back(v);
        }
        nl.elements.push_back(std::move(e));
    }
    return nl;
}

}  // namespace ionx

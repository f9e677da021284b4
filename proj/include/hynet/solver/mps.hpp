#pragma once

// Fixed-format MPS writer and a tolerant reader (whitespace-delimited, so
// names longer than the classic 8 characters survive a round trip), plus a
// parser for the plain "name value" solution-file format used to talk to
// external solvers.
//
// Writer field layout (1-based columns): field 1 at 2-3, field 2 at 5-12,
// field 3 at 15-22, field 4 at 25-36, field 5 at 40-47, field 6 at 50-61.
// Longer names push later fields right; every field stays whitespace
// separated, which is what the reader relies on.

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hynet/solver/mip_model.hpp"

namespace hynet {

struct MpsDocument {
    std::string text;
    std::vector<std::string> variable_names; // names as written, by variable id
    std::vector<std::string> row_names;      // by constraint id
};

namespace detail {

inline std::string sanitize_name(const std::string& raw, const char* fallback_prefix, int id) {
    std::string s;
    for (char c : raw)
        s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') ? c : '_';
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])))
        s = fallback_prefix + std::to_string(id);
    return s;
}

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void pad_to(std::string& line, std::size_t column) {
    if (line.size() + 1 >= column) {
        line += ' '; // field overflow: keep at least one separator
    } else {
        line.append(column - 1 - line.size(), ' ');
    }
}

/// Builds one data line with fields at the documented positions.
inline std::string mps_line(const std::string& f1, const std::string& f2, const std::string& f3 = "",
                            const std::string& f4 = "", const std::string& f5 = "",
                            const std::string& f6 = "") {
    std::string line;
    pad_to(line, 2);
    line += f1;
    pad_to(line, 5);
    line += f2;
    if (!f3.empty()) {
        pad_to(line, 15);
        line += f3;
    }
    if (!f4.empty()) {
        pad_to(line, 25);
        line += f4;
    }
    if (!f5.empty()) {
        pad_to(line, 40);
        line += f5;
    }
    if (!f6.empty()) {
        pad_to(line, 50);
        line += f6;
    }
    return line;
}

inline std::vector<std::string> unique_names(const std::vector<std::string>& raw,
                                             const char* fallback_prefix) {
    std::vector<std::string> out;
    std::map<std::string, int> used;
    for (int i = 0; i < static_cast<int>(raw.size()); ++i) {
        std::string name = sanitize_name(raw[i], fallback_prefix, i);
        auto [it, fresh] = used.emplace(name, 0);
        if (!fresh) {
            // Deterministic suffixing until free.
            while (true) {
                ++it->second;
                std::string candidate = name + "_" + std::to_string(it->second);
                if (used.emplace(candidate, 0).second) {
                    name = std::move(candidate);
                    break;
                }
            }
        }
        out.push_back(std::move(name));
    }
    return out;
}

} // namespace detail

inline MpsDocument export_mps(const MipModel& model, const std::string& model_name = "HYNET") {
    using detail::format_value;
    using detail::mps_line;

    MpsDocument doc;
    std::vector<std::string> raw_var, raw_row;
    for (const auto& v : model.variables) raw_var.push_back(v.name);
    for (const auto& r : model.constraints) raw_row.push_back(r.name);
    doc.variable_names = detail::unique_names(raw_var, "X");
    doc.row_names = detail::unique_names(raw_row, "R");

    std::ostringstream os;
    os << "NAME          " << model_name << "\n";
    os << "ROWS\n";
    os << mps_line("N", "COST") << "\n";
    for (int i = 0; i < model.constraint_count(); ++i) {
        const char* sense = model.constraints[i].sense == Sense::LessEqual      ? "L"
                            : model.constraints[i].sense == Sense::GreaterEqual ? "G"
                                                                                : "E";
        os << mps_line(sense, doc.row_names[i]) << "\n";
    }

    // Column-major coefficient lists.
    std::vector<std::vector<std::pair<int, double>>> cols(model.variable_count());
    for (int i = 0; i < model.constraint_count(); ++i)
        for (const auto& [var, coef] : model.constraints[i].coefficients)
            if (coef != 0.0) cols[var].push_back({i, coef});

    os << "COLUMNS\n";
    bool in_integer_block = false;
    int marker_id = 0;
    for (int j = 0; j < model.variable_count(); ++j) {
        const auto& v = model.variables[j];
        if (v.is_integer != in_integer_block) {
            os << mps_line("", "MARKER" + std::to_string(marker_id++), "'MARKER'", "",
                           v.is_integer ? "'INTORG'" : "'INTEND'")
               << "\n";
            in_integer_block = v.is_integer;
        }
        if (v.objective != 0.0)
            os << mps_line("", doc.variable_names[j], "COST", format_value(v.objective)) << "\n";
        for (std::size_t q = 0; q < cols[j].size(); q += 2) {
            if (q + 1 < cols[j].size()) {
                os << mps_line("", doc.variable_names[j], doc.row_names[cols[j][q].first],
                               format_value(cols[j][q].second), doc.row_names[cols[j][q + 1].first],
                               format_value(cols[j][q + 1].second))
                   << "\n";
            } else {
                os << mps_line("", doc.variable_names[j], doc.row_names[cols[j][q].first],
                               format_value(cols[j][q].second))
                   << "\n";
            }
        }
        if (v.objective == 0.0 && cols[j].empty())
            os << mps_line("", doc.variable_names[j], "COST", "0") << "\n";
    }
    if (in_integer_block)
        os << mps_line("", "MARKER" + std::to_string(marker_id++), "'MARKER'", "", "'INTEND'") << "\n";

    os << "RHS\n";
    for (int i = 0; i < model.constraint_count(); ++i)
        if (model.constraints[i].rhs != 0.0)
            os << mps_line("", "RHS", doc.row_names[i], format_value(model.constraints[i].rhs))
               << "\n";

    os << "BOUNDS\n";
    for (int j = 0; j < model.variable_count(); ++j) {
        const auto& v = model.variables[j];
        const std::string& name = doc.variable_names[j];
        if (v.is_integer && v.lower == 0.0 && v.upper == 1.0) {
            os << mps_line("BV", "BND", name) << "\n";
            continue;
        }
        if (v.lower == v.upper) {
            os << mps_line("FX", "BND", name, format_value(v.lower)) << "\n";
            continue;
        }
        if (!std::isfinite(v.lower) && !std::isfinite(v.upper)) {
            os << mps_line("FR", "BND", name) << "\n";
            continue;
        }
        if (!std::isfinite(v.lower)) os << mps_line("MI", "BND", name) << "\n";
        else if (v.lower != 0.0) os << mps_line("LO", "BND", name, format_value(v.lower)) << "\n";
        if (std::isfinite(v.upper)) os << mps_line("UP", "BND", name, format_value(v.upper)) << "\n";
    }
    os << "ENDATA\n";
    doc.text = os.str();
    return doc;
}

/// Parses MPS text (our own output, or any whitespace-delimited fixed MPS
/// without RANGES) back into a model. The first N row is the objective.
inline MipModel read_mps(const std::string& text) {
    std::istringstream in(text);
    MipModel model;
    std::map<std::string, int> row_id;  // excludes the objective
    std::map<std::string, int> var_id;
    std::string objective_row;
    bool maximize = false;

    enum class Section { None, Rows, Columns, Rhs, Bounds, ObjSense, Done };
    Section section = Section::None;
    bool integer_block = false;
    std::string line;

    auto get_var = [&](const std::string& name) {
        auto it = var_id.find(name);
        if (it != var_id.end()) return it->second;
        const int id = model.add_variable(0.0, kInf, false, 0.0, name);
        var_id.emplace(name, id);
        return id;
    };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '*') continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (!std::isspace(static_cast<unsigned char>(line[0]))) {
            const std::string& head = tok[0];
            if (head == "NAME") section = Section::None;
            else if (head == "ROWS") section = Section::Rows;
            else if (head == "COLUMNS") section = Section::Columns;
            else if (head == "RHS") section = Section::Rhs;
            else if (head == "RANGES") throw std::runtime_error("mps: RANGES not supported");
            else if (head == "BOUNDS") section = Section::Bounds;
            else if (head == "OBJSENSE") section = Section::ObjSense;
            else if (head == "ENDATA") section = Section::Done;
            else throw std::runtime_error("mps: unknown section '" + head + "'");
            continue;
        }

        switch (section) {
        case Section::ObjSense:
            maximize = tok[0] == "MAX" || tok[0] == "MAXIMIZE";
            break;
        case Section::Rows: {
            if (tok.size() < 2) throw std::runtime_error("mps: bad ROWS line: " + line);
            const std::string& type = tok[0];
            const std::string& name = tok[1];
            if (type == "N") {
                if (objective_row.empty()) objective_row = name;
            } else {
                Sense sense = type == "L"   ? Sense::LessEqual
                              : type == "G" ? Sense::GreaterEqual
                              : type == "E" ? Sense::Equal
                                            : throw std::runtime_error("mps: bad row type " + type);
                row_id[name] = model.add_constraint({}, sense, 0.0, name);
            }
            break;
        }
        case Section::Columns: {
            if (tok.size() >= 3 && tok[1] == "'MARKER'") {
                integer_block = tok.back() == "'INTORG'";
                break;
            }
            if (tok.size() < 3 || tok.size() % 2 == 0)
                throw std::runtime_error("mps: bad COLUMNS line: " + line);
            const int j = get_var(tok[0]);
            model.variables[j].is_integer = integer_block;
            for (std::size_t q = 1; q + 1 < tok.size(); q += 2) {
                const std::string& row = tok[q];
                const double value = std::stod(tok[q + 1]);
                if (row == objective_row) {
                    model.variables[j].objective += value;
                } else {
                    auto it = row_id.find(row);
                    if (it == row_id.end()) throw std::runtime_error("mps: unknown row " + row);
                    model.constraints[it->second].coefficients.push_back({j, value});
                }
            }
            break;
        }
        case Section::Rhs: {
            if (tok.size() < 3 || tok.size() % 2 == 0)
                throw std::runtime_error("mps: bad RHS line: " + line);
            for (std::size_t q = 1; q + 1 < tok.size(); q += 2) {
                const std::string& row = tok[q];
                const double value = std::stod(tok[q + 1]);
                if (row == objective_row) continue; // objective offset ignored
                auto it = row_id.find(row);
                if (it == row_id.end()) throw std::runtime_error("mps: unknown row " + row);
                model.constraints[it->second].rhs = value;
            }
            break;
        }
        case Section::Bounds: {
            if (tok.size() < 3) throw std::runtime_error("mps: bad BOUNDS line: " + line);
            const std::string& type = tok[0];
            const int j = get_var(tok[2]);
            auto& v = model.variables[j];
            const double value = tok.size() >= 4 ? std::stod(tok[3]) : 0.0;
            if (type == "UP") v.upper = value;
            else if (type == "LO") v.lower = value;
            else if (type == "FX") v.lower = v.upper = value;
            else if (type == "FR") { v.lower = -kInf; v.upper = kInf; }
            else if (type == "MI") v.lower = -kInf;
            else if (type == "PL") v.upper = kInf;
            else if (type == "BV") { v.lower = 0.0; v.upper = 1.0; v.is_integer = true; }
            else if (type == "UI") { v.upper = value; v.is_integer = true; }
            else if (type == "LI") { v.lower = value; v.is_integer = true; }
            else throw std::runtime_error("mps: bad bound type " + type);
            break;
        }
        case Section::None:
        case Section::Done:
            break;
        }
    }

    if (maximize)
        for (auto& v : model.variables) v.objective = -v.objective;
    return model;
}

/// Parses the documented solution format: one "name value" pair per line,
/// '#' starts a comment, unknown names are ignored, absent variables are 0.
inline std::vector<double> parse_solution(const std::string& text,
                                          const std::vector<std::string>& variable_names) {
    std::map<std::string, int> ids;
    for (int j = 0; j < static_cast<int>(variable_names.size()); ++j) ids[variable_names[j]] = j;
    std::vector<double> x(variable_names.size(), 0.0);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        double value;
        if (!(ls >> name >> value)) continue;
        auto it = ids.find(name);
        if (it != ids.end()) x[it->second] = value;
    }
    return x;
}

} // namespace hynet

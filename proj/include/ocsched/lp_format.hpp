/*
Copyright 2026 The ocsched Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocsched/milp_model.hpp"

namespace ocsched {

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string join_ids(const std::vector<ConfigId> &ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out += (i ? "," : "") + std::to_string(ids[i]);
    }
    return out;
}

inline void write_expression(std::ostringstream &os, const MilpModel &model, const std::vector<Term> &terms,
                             std::size_t indent) {
    const auto &vars = model.variables();
    std::size_t column = indent;
    bool first = true;
    for (const auto &t : terms) {
        std::string piece;
        const double mag = std::fabs(t.coeff);
        if (first) {
            piece = t.coeff < 0 ? "- " : "";
        } else {
            piece = t.coeff < 0 ? " - " : " + ";
        }
        if (mag != 1.0) {
            piece += format_number(mag) + " ";
        }
        piece += vars[t.var].name;
        if (column + piece.size() > 200) {
            os << "\n" << std::string(indent, ' ');
            column = indent;
        }
        os << piece;
        column += piece.size();
        first = false;
    }
    if (terms.empty()) {
        os << "0 " << vars.front().name;
    }
}

inline const char *sense_text(Sense s) {
    switch (s) {
    case Sense::LessEqual:
        return "<=";
    case Sense::GreaterEqual:
        return ">=";
    case Sense::Equal:
        return "=";
    }
    return "=";
}

} // namespace detail

/**
 * @brief Writes `model` in the CPLEX LP text format.
 *
 * The output is a pure function of the model: rows keep their build order and
 * numbers use shortest round-trip formatting. Instance metadata rides along in
 * `\ ocsched-meta` comment lines, which other LP readers ignore.
 */
inline std::string export_lp(const MilpModel &model) {
    const auto &meta = model.metadata;
    const auto &vars = model.variables();
    std::ostringstream os;
    os << "\\ ocsched model: " << vars.size() << " variables, " << model.constraints().size() << " constraints\n";
    os << "\\ ocsched-meta steps=" << meta.steps << " ocs=" << meta.ocs << " configs=" << meta.config_count << "\n";
    os << "\\ ocsched-meta bandwidth_bps=" << format_number(meta.bandwidth_bps)
       << " t_recfg_s=" << format_number(meta.t_recfg_s) << " sync_latency_s=" << format_number(meta.sync_latency_s)
       << "\n";
    os << "\\ ocsched-meta time_big_m=" << format_number(model.time_big_m)
       << " config_big_m=" << format_number(model.config_big_m) << "\n";
    os << "\\ ocsched-meta init=" << (meta.initial_configs ? detail::join_ids(*meta.initial_configs) : "free") << "\n";
    for (std::size_t i = 0; i < meta.steps; ++i) {
        os << "\\ ocsched-meta step=" << i + 1 << " cfg=" << meta.cfg[i]
           << " volume_bytes=" << format_number(meta.volumes_bytes[i]) << "\n";
    }

    os << "Minimize\n obj: ";
    detail::write_expression(os, model, model.objective(), 6);
    os << "\nSubject To\n";
    for (const auto &c : model.constraints()) {
        os << " " << c.name << ": ";
        detail::write_expression(os, model, c.terms, c.name.size() + 3);
        os << " " << detail::sense_text(c.sense) << " " << format_number(c.rhs) << "\n";
    }

    os << "Bounds\n";
    for (const auto &v : vars) {
        if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) {
            continue;
        }
        if (v.lower == v.upper) {
            os << " " << v.name << " = " << format_number(v.lower) << "\n";
        } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
            os << " " << v.name << " free\n";
        } else if (v.lower == 0.0 && std::isinf(v.upper)) {
            continue; // LP default
        } else {
            os << " " << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper) << "\n";
        }
    }
    auto write_names = [&](const char *section, VarKind kind) {
        std::vector<std::string> names;
        for (const auto &v : vars) {
            if (v.kind == kind) {
                names.push_back(v.name);
            }
        }
        if (names.empty()) {
            return;
        }
        os << section << "\n";
        std::size_t column = 0;
        for (const auto &n : names) {
            if (column > 0 && column + n.size() > 200) {
                os << "\n";
                column = 0;
            }
            os << " " << n;
            column += n.size() + 1;
        }
        os << "\n";
    };
    write_names("Binaries", VarKind::Binary);
    write_names("Generals", VarKind::Integer);
    os << "End\n";
    return os.str();
}

class LpParseError : public std::runtime_error {
  public:
    LpParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

namespace detail {

struct LpToken {
    enum class Kind { Word, Number, Op, Colon, Sign } kind;
    std::string text;
    double value = 0.0;
    std::size_t line = 0;
};

inline std::string lower_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.!\"#$%&()/,;?@'`{}|~[]^").find(c) !=
                                                              std::string_view::npos;
}

inline std::optional<double> parse_double(std::string_view s) {
    const auto ls = lower_case(s);
    if (ls == "inf" || ls == "infinity") {
        return kInfinity;
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

/// key=value pairs from one `\ ocsched-meta` comment.
inline void read_meta(std::string_view body, ModelMetadata &meta, MilpModel &model, std::size_t line) {
    std::istringstream is{std::string(body)};
    std::string item;
    std::size_t step = 0;
    while (is >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw LpParseError(line, "malformed metadata item '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        auto number = [&]() {
            auto v = parse_double(val);
            if (!v) {
                throw LpParseError(line, "metadata " + key + " is not a number");
            }
            return *v;
        };
        if (key == "steps") {
            meta.steps = static_cast<std::size_t>(number());
            meta.cfg.assign(meta.steps, kBlankConfig);
            meta.volumes_bytes.assign(meta.steps, 0.0);
        } else if (key == "ocs") {
            meta.ocs = static_cast<std::size_t>(number());
        } else if (key == "configs") {
            meta.config_count = static_cast<std::size_t>(number());
        } else if (key == "bandwidth_bps") {
            meta.bandwidth_bps = number();
        } else if (key == "t_recfg_s") {
            meta.t_recfg_s = number();
        } else if (key == "sync_latency_s") {
            meta.sync_latency_s = number();
        } else if (key == "time_big_m") {
            model.time_big_m = number();
        } else if (key == "config_big_m") {
            model.config_big_m = number();
        } else if (key == "init") {
            if (val != "free") {
                std::vector<ConfigId> ids;
                std::istringstream ls(val);
                std::string part;
                while (std::getline(ls, part, ',')) {
                    ids.push_back(static_cast<ConfigId>(std::stoul(part)));
                }
                meta.initial_configs = std::move(ids);
            }
        } else if (key == "step") {
            step = static_cast<std::size_t>(number());
            if (step == 0 || step > meta.steps) {
                throw LpParseError(line, "metadata step index out of range");
            }
        } else if (key == "cfg") {
            if (step == 0) {
                throw LpParseError(line, "cfg without step");
            }
            meta.cfg[step - 1] = static_cast<ConfigId>(number());
        } else if (key == "volume_bytes") {
            if (step == 0) {
                throw LpParseError(line, "volume_bytes without step");
            }
            meta.volumes_bytes[step - 1] = number();
        }
    }
}

inline std::vector<LpToken> tokenize_lp(std::string_view text, ModelMetadata &meta, MilpModel &model) {
    std::vector<LpToken> out;
    std::size_t line = 1;
    std::size_t pos = 0;
    constexpr std::string_view kMeta = "ocsched-meta";
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '\n') {
            ++line;
            ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else if (c == '\\') {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view comment = text.substr(pos + 1, end - pos - 1);
            const auto first = comment.find_first_not_of(' ');
            if (first != std::string_view::npos && comment.substr(first, kMeta.size()) == kMeta) {
                read_meta(comment.substr(first + kMeta.size()), meta, model, line);
            }
            pos = end;
        } else if (c == '<' || c == '>' || c == '=') {
            std::string op(1, c);
            ++pos;
            if (pos < text.size() && text[pos] == '=') {
                op += '=';
                ++pos;
            } else if (c == '=' && pos < text.size() && (text[pos] == '<' || text[pos] == '>')) {
                op = std::string(1, text[pos]) + "=";
                ++pos;
            }
            if (op == "<") {
                op = "<=";
            } else if (op == ">") {
                op = ">=";
            }
            out.push_back({LpToken::Kind::Op, op, 0.0, line});
        } else if (c == ':') {
            out.push_back({LpToken::Kind::Colon, ":", 0.0, line});
            ++pos;
        } else if (c == '+' || c == '-') {
            out.push_back({LpToken::Kind::Sign, std::string(1, c), 0.0, line});
            ++pos;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos;
            while (end < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
                    ((text[end] == 'e' || text[end] == 'E') && end + 1 < text.size()) ||
                    ((text[end] == '+' || text[end] == '-') && (text[end - 1] == 'e' || text[end - 1] == 'E')))) {
                ++end;
            }
            const std::string_view num = text.substr(pos, end - pos);
            const auto v = parse_double(num);
            if (!v) {
                throw LpParseError(line, "bad number '" + std::string(num) + "'");
            }
            out.push_back({LpToken::Kind::Number, std::string(num), *v, line});
            pos = end;
        } else if (is_name_char(c)) {
            std::size_t end = pos;
            while (end < text.size() && is_name_char(text[end])) {
                ++end;
            }
            out.push_back({LpToken::Kind::Word, std::string(text.substr(pos, end - pos)), 0.0, line});
            pos = end;
        } else {
            throw LpParseError(line, std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

enum class LpSection { None, Objective, Constraints, Bounds, Binaries, Generals, End };

struct ParsedRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

inline std::string tag_for_row(const std::string &name) {
    const auto cut = name.find('_');
    const std::string family = name.substr(0, cut);
    if (family.rfind("lc", 0) == 0) {
        return "lastcfg";
    }
    if (family.rfind("eq", 0) == 0) {
        std::size_t end = 2;
        while (end < family.size() && std::isdigit(static_cast<unsigned char>(family[end]))) {
            ++end;
        }
        return family.substr(0, end);
    }
    if (family == "obj") {
        return "obj";
    }
    return "linearization";
}

} // namespace detail

/**
 * @brief Reads a model written in the CPLEX LP format.
 *
 * Handles the subset used by export_lp plus the common spellings of section
 * keywords, `<`/`>` senses, free and fixed bounds and wrapped expressions.
 * Variables take LP defaults ([0, inf), continuous) unless later sections
 * say otherwise.
 */
inline MilpModel parse_lp(std::string_view text) {
    using detail::LpSection;
    using detail::LpToken;
    MilpModel model;
    ModelMetadata meta;
    const auto tokens = detail::tokenize_lp(text, meta, model);

    std::vector<std::string> order;
    std::unordered_map<std::string, Variable> declared;
    auto touch = [&](const std::string &name) -> Variable & {
        auto it = declared.find(name);
        if (it == declared.end()) {
            order.push_back(name);
            it = declared.emplace(name, Variable{name, VarKind::Continuous, 0.0, kInfinity}).first;
        }
        return it->second;
    };

    std::vector<std::pair<std::string, double>> objective;
    std::vector<detail::ParsedRow> rows;
    LpSection section = LpSection::None;
    std::size_t i = 0;
    const std::size_t n = tokens.size();

    auto section_keyword = [&](std::size_t k, LpSection &next, std::size_t &width) -> bool {
        if (tokens[k].kind != LpToken::Kind::Word) {
            return false;
        }
        const std::string w = detail::lower_case(tokens[k].text);
        width = 1;
        if (k + 1 < n && tokens[k + 1].kind == LpToken::Kind::Colon) {
            return false; // a row label, not a keyword
        }
        if (w == "minimize" || w == "minimise" || w == "minimum" || w == "min") {
            next = LpSection::Objective;
        } else if (w == "maximize" || w == "maximise" || w == "maximum" || w == "max") {
            throw LpParseError(tokens[k].line, "maximisation models are not supported");
        } else if ((w == "subject" || w == "such") && k + 1 < n && tokens[k + 1].kind == LpToken::Kind::Word &&
                   (detail::lower_case(tokens[k + 1].text) == "to" || detail::lower_case(tokens[k + 1].text) == "that")) {
            next = LpSection::Constraints;
            width = 2;
        } else if (w == "st" || w == "s.t." || w == "st.") {
            next = LpSection::Constraints;
        } else if (w == "bounds" || w == "bound") {
            next = LpSection::Bounds;
        } else if (w == "binaries" || w == "binary" || w == "bin") {
            next = LpSection::Binaries;
        } else if (w == "generals" || w == "general" || w == "gen" || w == "integers") {
            next = LpSection::Generals;
        } else if (w == "end") {
            next = LpSection::End;
        } else {
            return false;
        }
        return true;
    };

    // [sign] [number] name, repeated; stops at a sense operator or section keyword
    auto read_expression = [&](std::vector<std::pair<std::string, double>> &terms) {
        while (i < n) {
            LpSection next;
            std::size_t width;
            if (tokens[i].kind == LpToken::Kind::Op || section_keyword(i, next, width)) {
                return;
            }
            double coeff = 1.0;
            bool any = false;
            const std::size_t term_line = tokens[i].line;
            while (i < n && tokens[i].kind == LpToken::Kind::Sign) {
                coeff = tokens[i].text == "-" ? -coeff : coeff;
                ++i;
                any = true;
            }
            if (i < n && tokens[i].kind == LpToken::Kind::Number) {
                coeff *= tokens[i].value;
                ++i;
                any = true;
            }
            if (i < n && tokens[i].kind == LpToken::Kind::Word && !section_keyword(i, next, width)) {
                touch(tokens[i].text);
                terms.emplace_back(tokens[i].text, coeff);
                ++i;
            } else if (any) {
                throw LpParseError(term_line, "expected a variable name");
            } else {
                throw LpParseError(tokens[i].line, "unexpected token '" + tokens[i].text + "'");
            }
        }
    };

    auto read_signed_number = [&]() -> double {
        double sign = 1.0;
        while (i < n && tokens[i].kind == LpToken::Kind::Sign) {
            sign = tokens[i].text == "-" ? -sign : sign;
            ++i;
        }
        if (i < n && tokens[i].kind == LpToken::Kind::Number) {
            return sign * tokens[i++].value;
        }
        if (i < n && tokens[i].kind == LpToken::Kind::Word) {
            if (auto v = detail::parse_double(tokens[i].text)) {
                ++i;
                return sign * *v;
            }
        }
        throw LpParseError(i < n ? tokens[i].line : tokens.back().line, "expected a number");
    };

    auto to_sense = [](const std::string &op) {
        return op == "<=" ? Sense::LessEqual : (op == ">=" ? Sense::GreaterEqual : Sense::Equal);
    };

    std::size_t unnamed = 0;
    while (i < n && section != LpSection::End) {
        LpSection next;
        std::size_t width;
        if (section_keyword(i, next, width)) {
            section = next;
            i += width;
            continue;
        }
        const std::size_t line = tokens[i].line;
        switch (section) {
        case LpSection::None:
            throw LpParseError(line, "content before the objective section");
        case LpSection::Objective:
            if (tokens[i].kind == LpToken::Kind::Word && i + 1 < n && tokens[i + 1].kind == LpToken::Kind::Colon) {
                i += 2;
            }
            read_expression(objective);
            break;
        case LpSection::Constraints: {
            detail::ParsedRow row;
            if (tokens[i].kind == LpToken::Kind::Word && i + 1 < n && tokens[i + 1].kind == LpToken::Kind::Colon) {
                row.name = tokens[i].text;
                i += 2;
            } else {
                row.name = "R" + std::to_string(++unnamed);
            }
            read_expression(row.terms);
            if (i >= n || tokens[i].kind != LpToken::Kind::Op) {
                throw LpParseError(line, "constraint " + row.name + " lacks a relational operator");
            }
            row.sense = to_sense(tokens[i++].text);
            row.rhs = read_signed_number();
            rows.push_back(std::move(row));
            break;
        }
        case LpSection::Bounds: {
            // forms: name free | name op num | num op name [op num]
            if (tokens[i].kind == LpToken::Kind::Word && !detail::parse_double(tokens[i].text)) {
                Variable &v = touch(tokens[i].text);
                ++i;
                if (i < n && tokens[i].kind == LpToken::Kind::Word && detail::lower_case(tokens[i].text) == "free") {
                    v.lower = -kInfinity;
                    v.upper = kInfinity;
                    ++i;
                    break;
                }
                if (i >= n || tokens[i].kind != LpToken::Kind::Op) {
                    throw LpParseError(line, "malformed bound for " + v.name);
                }
                const std::string op = tokens[i++].text;
                const double value = read_signed_number();
                if (op == "<=") {
                    v.upper = value;
                } else if (op == ">=") {
                    v.lower = value;
                } else {
                    v.lower = v.upper = value;
                }
                break;
            }
            const double first = read_signed_number();
            if (i >= n || tokens[i].kind != LpToken::Kind::Op) {
                throw LpParseError(line, "malformed bound");
            }
            const std::string op1 = tokens[i++].text;
            if (i >= n || tokens[i].kind != LpToken::Kind::Word) {
                throw LpParseError(line, "bound without a variable");
            }
            Variable &v = touch(tokens[i++].text);
            if (op1 == "<=") {
                v.lower = first;
            } else if (op1 == ">=") {
                v.upper = first;
            } else {
                v.lower = v.upper = first;
            }
            if (i < n && tokens[i].kind == LpToken::Kind::Op) {
                const std::string op2 = tokens[i++].text;
                const double second = read_signed_number();
                if (op2 == "<=") {
                    v.upper = second;
                } else if (op2 == ">=") {
                    v.lower = second;
                } else {
                    throw LpParseError(line, "malformed double bound for " + v.name);
                }
            }
            break;
        }
        case LpSection::Binaries:
        case LpSection::Generals: {
            if (tokens[i].kind != LpToken::Kind::Word) {
                throw LpParseError(line, "expected a variable name");
            }
            Variable &v = touch(tokens[i++].text);
            v.kind = section == LpSection::Binaries ? VarKind::Binary : VarKind::Integer;
            break;
        }
        case LpSection::End:
            break;
        }
    }
    if (section != LpSection::End) {
        throw LpParseError(tokens.empty() ? 1 : tokens.back().line, "missing End");
    }

    for (const auto &name : order) {
        const Variable &v = declared.at(name);
        double lo = v.lower;
        double hi = v.upper;
        if (v.kind == VarKind::Binary && lo == 0.0 && std::isinf(hi)) {
            hi = 1.0;
        }
        model.add_variable(v.name, v.kind, lo, hi);
    }
    auto to_terms = [&](const std::vector<std::pair<std::string, double>> &parsed) {
        std::vector<Term> terms;
        for (const auto &[name, coeff] : parsed) {
            terms.push_back({model.require(name), coeff});
        }
        return terms;
    };
    model.set_objective(to_terms(objective));
    for (const auto &row : rows) {
        model.add_constraint(row.name, detail::tag_for_row(row.name), to_terms(row.terms), row.sense, row.rhs);
    }
    model.metadata = std::move(meta);
    return model;
}

} // namespace ocsched

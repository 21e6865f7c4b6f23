#include "aromakit/combo.hpp"

#include <json.hpp>

#include <stdexcept>

namespace aromakit {

std::pair<int, int> FormCombo::grade() const {
    if (terms_.empty()) return {-1, -1};
    auto& first = terms_.begin()->first;
    int n = first.num_roots() - first.detached;
    int p = first.num_covertices();
    for (auto& [f, c] : terms_)
        if (f.num_roots() - f.detached != n || f.num_covertices() != p)
            throw std::invalid_argument("mixed grades in combination");
    return {n, p};
}

std::string to_string(const FormCombo& c) {
    if (c.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [f, v] : c.terms()) {
        if (!first) out += " + ";
        first = false;
        out += to_string(v) + " * " + print(f);
    }
    return out;
}

std::string to_json(const FormCombo& c) {
    nlohmann::json out = nlohmann::json::array();
    for (auto& [f, v] : c.terms())
        out.push_back({{"forest", print(f)}, {"coeff", to_string(v)}});
    return out.dump();
}

FormCombo combo_from_json(const std::string& text) {
    FormCombo out;
    for (auto& entry : nlohmann::json::parse(text))
        out.add(parse(entry.at("forest").get<std::string>()),
                parse_rational(entry.at("coeff").get<std::string>()));
    return out;
}

FormCombo parse_combo(const std::string& text) {
    FormCombo out;
    if (text == "0") return out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(" + ", pos);
        std::string term =
            text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? text.size() : next + 3;
        auto star = term.find(" * ");
        if (star == std::string::npos) {
            out.add(parse(term), 1);
        } else {
            out.add(parse(term.substr(star + 3)), parse_rational(term.substr(0, star)));
        }
    }
    return out;
}

} // namespace aromakit

#include "chexpm/json_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace chexpm {

ComplexMatrix matrix_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("matrix JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
        throw InvalidInputError("matrix JSON must be {\"n\":..., \"re\":[[...]], \"im\":[[...]]}");
    const int n = j.at("n").get<int>();
    if (n < 1) throw InvalidInputError("matrix JSON: n must be >= 1");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != n ||
        static_cast<int>(im.size()) != n)
        throw InvalidInputError("matrix JSON: re/im must be n rows");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
            throw InvalidInputError("matrix JSON: each row needs n entries");
        for (int k = 0; k < n; ++k)
            m(i, k) = Complex{re[i][k].get<double>(), im[i][k].get<double>()};
    }
    require_finite(m, "matrix JSON");
    return m;
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // normalize -0 so serialization round-trips
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back() && !pending_key_) out_ += ',';
        first_in_scope_.back() = false;
    }
    pending_key_ = false;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ += '[';
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    comma();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    comma();
    out_ += '"';
    out_ += v;
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::complex_value(Complex z) {
    begin_array();
    value(z.real());
    value(z.imag());
    return end_array();
}

JsonWriter& JsonWriter::raw(const std::string& fragment) {
    comma();
    out_ += fragment;
    return *this;
}

void append_matrix(JsonWriter& w, const ComplexMatrix& m) {
    w.begin_object();
    w.key("n").value(m.n());
    w.key("re").begin_array();
    for (int i = 0; i < m.n(); ++i) {
        w.begin_array();
        for (int j = 0; j < m.n(); ++j) w.value(m(i, j).real());
        w.end_array();
    }
    w.end_array();
    w.key("im").begin_array();
    for (int i = 0; i < m.n(); ++i) {
        w.begin_array();
        for (int j = 0; j < m.n(); ++j) w.value(m(i, j).imag());
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

std::string matrix_to_json(const ComplexMatrix& m) {
    JsonWriter w;
    append_matrix(w, m);
    return w.str();
}

}  // namespace chexpm

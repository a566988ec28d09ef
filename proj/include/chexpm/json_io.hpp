#pragma once

#include <string>
#include <vector>

#include "chexpm/matrix.hpp"

namespace chexpm {

// Matrix wire format: {"n": int, "re": [[...]], "im": [[...]]}, row-major.
ComplexMatrix matrix_from_json_text(const std::string& text);

// All numbers printed with %.17g so repeated runs are byte-identical.
std::string format_double(double v);

// Minimal emitter for the fixed output shapes of the CLI: deterministic key
// order, fixed float formatting. Values are appended in call order.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(bool v);
    JsonWriter& complex_value(Complex z);  // [re, im]
    JsonWriter& raw(const std::string& fragment);

    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_key_ = false;
};

std::string matrix_to_json(const ComplexMatrix& m);
void append_matrix(JsonWriter& w, const ComplexMatrix& m);

}  // namespace chexpm

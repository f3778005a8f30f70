#include "asyncat/json_io.hpp"

#include <json.hpp>

#include "asyncat/errors.hpp"

namespace asyncat {

using nlohmann::json;

static json value_json(const Value& v) {
    switch (v.index()) {
    case 0: return std::get<0>(v);
    case 1: return std::get<1>(v);
    default: return std::get<2>(v);
    }
}

static Value json_value(const json& j) {
    if (j.is_boolean()) return bool_val(j.get<bool>());
    if (j.is_number_integer()) return int_val(j.get<std::int64_t>());
    if (j.is_string()) return str_val(j.get<std::string>());
    throw MalformedTrace("unsupported value " + j.dump());
}

std::string trace_to_json(const Trace& t, int indent) {
    json arr = json::array();
    for (auto& it : t) {
        if (is_state(it)) {
            json b = json::object();
            for (auto& [x, v] : as_state(it).bindings()) b[x] = value_json(v);
            arr.push_back({{"kind", "state"}, {"bindings", b}});
            continue;
        }
        auto& e = as_event(it);
        json j = {{"kind", "event"}, {"tag", tag_name(e.tag)}};
        if (is_file_tag(e.tag)) {
            j["file"] = value_json(e.file);
        } else {
            if (e.tag != Tag::Ret) j["name"] = e.name;
            j["id"] = e.id;
        }
        arr.push_back(j);
    }
    return arr.dump(indent);
}

Trace trace_from_json(const std::string& text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::exception& ex) {
        throw MalformedTrace(std::string("bad JSON: ") + ex.what());
    }
    if (!arr.is_array()) throw MalformedTrace("trace JSON must be an array");
    Trace t;
    try {
        for (auto& j : arr) {
            auto kind = j.at("kind").get<std::string>();
            if (kind == "state") {
                Bindings b;
                for (auto& [x, v] : j.at("bindings").items()) b[x] = json_value(v);
                t.emplace_back(State(b));
            } else if (kind == "event") {
                auto tag = tag_from_name(j.at("tag").get<std::string>());
                if (!tag) throw MalformedTrace("unknown event tag " + j.at("tag").dump());
                Event e;
                e.tag = *tag;
                if (is_file_tag(*tag)) {
                    e.file = json_value(j.at("file"));
                } else {
                    if (*tag != Tag::Ret) e.name = j.at("name").get<std::string>();
                    e.id = j.at("id").get<std::int64_t>();
                    if (e.id < 0) throw MalformedTrace("negative call id");
                }
                t.emplace_back(e);
            } else {
                throw MalformedTrace("unknown item kind " + kind);
            }
        }
    } catch (const json::exception& ex) {
        throw MalformedTrace(std::string("bad trace item: ") + ex.what());
    }
    return t;
}

}  // namespace asyncat

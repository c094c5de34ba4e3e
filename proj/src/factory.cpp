#include <fstream>

#include "diffam/field.hpp"
#include "diffam/group.hpp"

#include "json.hpp"

namespace diffam {

FiniteGroup group_from_spec(const GroupSpec& spec) {
    switch (spec.kind) {
    case GroupKind::cyclic: return build_cyclic(static_cast<int>(spec.a));
    case GroupKind::gf_additive:
        return build_gf_additive(
            FiniteField::build(static_cast<int>(spec.a), static_cast<int>(spec.b)));
    case GroupKind::gf_multiplicative:
        return build_gf_multiplicative(
            FiniteField::build(static_cast<int>(spec.a), static_cast<int>(spec.b)));
    case GroupKind::semidirect:
        return build_semidirect_cyclic(static_cast<int>(spec.a), static_cast<int>(spec.b),
                                       spec.c);
    case GroupKind::alternating: return build_alternating(static_cast<int>(spec.a));
    case GroupKind::spence:
        return build_spence(static_cast<int>(spec.a), static_cast<int>(spec.b),
                            static_cast<int>(spec.c));
    case GroupKind::cayley: {
        std::ifstream in(spec.path);
        if (!in)
            throw Error(ErrorKind::io_error, "cannot open Cayley table file '" + spec.path + "'");
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            throw Error(ErrorKind::parse_error,
                        "Cayley table file '" + spec.path + "' is not valid JSON: " + e.what());
        }
        if (!doc.is_object() || !doc.contains("table"))
            throw Error(ErrorKind::parse_error,
                        "Cayley table file must be an object with a \"table\" array");
        std::vector<std::vector<int>> table;
        try {
            table = doc.at("table").get<std::vector<std::vector<int>>>();
        } catch (const std::exception& e) {
            throw Error(ErrorKind::parse_error,
                        std::string("Cayley \"table\" must be an array of integer arrays: ") +
                            e.what());
        }
        std::vector<std::string> labels;
        if (doc.contains("labels")) {
            try {
                labels = doc.at("labels").get<std::vector<std::string>>();
            } catch (const std::exception& e) {
                throw Error(ErrorKind::parse_error,
                            std::string("Cayley \"labels\" must be an array of strings: ") +
                                e.what());
            }
        } else {
            labels.resize(table.size());
            for (size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i);
        }
        return build_from_cayley(std::move(labels), table, spec);
    }
    }
    throw Error(ErrorKind::invalid_parameter, "unhandled group kind");
}

FiniteGroup group_from_spec(const std::string& spec_text) {
    return group_from_spec(GroupSpec::parse(spec_text));
}

} // namespace diffam

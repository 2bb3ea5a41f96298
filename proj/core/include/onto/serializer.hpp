// serializer.hpp - canonical text emission for the three formats
#pragma once

#include <string>

#include "onto/instance.hpp"
#include "onto/model.hpp"
#include "onto/refinement_types.hpp"

namespace onto {

// Each serializer emits canonical text that reparses to a structurally
// equal object (round-trip property).

std::string serialize_ontology(const Ontology& ontology);
std::string serialize_instance_model(const InstanceModel& model);
std::string serialize_refinement_map(const RefinementMap& map);

/// Quotes a name for the DSL (used by serializers and report renderers).
std::string quote(std::string_view name);

}  // namespace onto

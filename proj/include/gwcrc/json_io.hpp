#pragma once

#include <json.hpp>

#include "gwcrc/lpoly.hpp"
#include "gwcrc/qseries.hpp"

namespace gwcrc {

using json = nlohmann::ordered_json;

json to_json(const CycNum& x);
CycNum cycnum_from_json(const json& j);

json to_json(const QSeries& s);
QSeries qseries_from_json(const json& j);

json to_json(const LPoly& p);
LPoly lpoly_from_json(const json& j);

}  // namespace gwcrc

#include "gwcrc/json_io.hpp"

namespace gwcrc {

json to_json(const CycNum& x) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(rat_to_string(c));
    return json{{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

CycNum cycnum_from_json(const json& j) {
    long M = j.at("conductor").get<long>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_parse(c.get<std::string>()));
    return CycNum(M, std::move(coeffs));
}

json to_json(const QSeries& s) {
    json coeffs = json::array();
    for (const auto& [e, c] : s.coeffs()) coeffs.push_back(json::array({e, to_json(c)}));
    return json{{"var", std::string(1, s.var())},
                {"lowest", s.lowest()},
                {"trunc", s.trunc()},
                {"coeffs", coeffs}};
}

QSeries qseries_from_json(const json& j) {
    char var = j.at("var").get<std::string>().at(0);
    QSeries s(var, j.at("trunc").get<long>());
    for (const auto& pair : j.at("coeffs"))
        s.set_coeff(pair.at(0).get<long>(), cycnum_from_json(pair.at(1)));
    return s;
}

json to_json(const LPoly& p) {
    json coeffs = json::array();
    for (const auto& [e, c] : p.coeffs()) coeffs.push_back(json::array({e, to_json(c)}));
    return json{{"L", coeffs}};
}

LPoly lpoly_from_json(const json& j) {
    LPoly p;
    for (const auto& pair : j.at("L"))
        p.set_coeff(pair.at(0).get<long>(), cycnum_from_json(pair.at(1)));
    return p;
}

}  // namespace gwcrc

#include "vml/cli/presets.hpp"

#include "vml/error.hpp"

namespace vml {

std::vector<std::string> preset_names() {
    return {"default-linearized", "small-broadband", "relaxation", "vacuum-maxwell", "nonlinear"};
}

RunConfig preset(const std::string& name) {
    RunConfig c;
    if (name == "default-linearized") return c;
    if (name == "small-broadband") {
        c.n_v = 12;
        c.n_x = 16;
        c.modes = 4;
        c.t_end = 10.0;
        c.output_every = 5;
        return c;
    }
    if (name == "relaxation") {
        c.n_v = 12;
        c.n_x = 4;
        c.initial = InitialKind::homogeneous;
        c.transport = false;
        c.fields = false;
        c.dt = 0.1;
        c.t_end = 20.0;
        c.output_every = 1;
        return c;
    }
    if (name == "vacuum-maxwell") {
        c.n_v = 8;
        c.n_x = 16;
        c.box_length = 2.0 * 3.14159265358979323846;
        c.initial = InitialKind::vacuum_wave;
        c.amplitude = 1.0;
        c.coupling = false;
        c.collisions = false;
        c.transport = false;
        c.dt = 0.01;
        c.t_end = 10.0;
        c.output_every = 10;
        return c;
    }
    if (name == "nonlinear") {
        c.n_v = 12;
        c.n_x = 16;
        c.modes = 4;
        c.mode = Mode::nonlinear;
        c.t_end = 2.0;
        c.output_every = 5;
        return c;
    }
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace vml

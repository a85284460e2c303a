#include "surfhps/imex.hpp"

namespace surfhps {

ImexBdfTableau imex_bdf_tableau(int steps) {
    ImexBdfTableau t;
    t.steps = steps;
    switch (steps) {
        case 1:
            t.omega = 1.0;
            t.a = {1.0, 0.0, 0.0, 0.0};
            t.b = {1.0, 0.0, 0.0, 0.0};
            break;
        case 2:
            t.omega = 2.0 / 3.0;
            t.a = {4.0 / 3.0, -1.0 / 3.0, 0.0, 0.0};
            t.b = {4.0 / 3.0, -2.0 / 3.0, 0.0, 0.0};
            break;
        case 3:
            t.omega = 6.0 / 11.0;
            t.a = {18.0 / 11.0, -9.0 / 11.0, 2.0 / 11.0, 0.0};
            t.b = {18.0 / 11.0, -18.0 / 11.0, 6.0 / 11.0, 0.0};
            break;
        case 4:
            t.omega = 12.0 / 25.0;
            t.a = {48.0 / 25.0, -36.0 / 25.0, 16.0 / 25.0, -3.0 / 25.0};
            t.b = {48.0 / 25.0, -72.0 / 25.0, 48.0 / 25.0, -12.0 / 25.0};
            break;
        default:
            fail(ErrorCode::InvalidArgument, "IMEX-BDF order must be between 1 and 4");
    }
    return t;
}

}  // namespace surfhps

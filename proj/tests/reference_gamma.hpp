// Copyright 2026 The keyrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>

namespace keyrace::testing {

struct GammaPoint {
  double a, x, q;
};

// Upper regularized incomplete gamma Q(a, x), 50-digit reference values from
// tests/oracle/reference_values.py. x = df * f / 2 for df in
// {1,2,3,4,5,7,10,20} and f in {0.05,0.3,0.8,1,1.4,2,3,5}.
inline constexpr std::array<GammaPoint, 64> kGammaQ = {{
    {0.5, 0.025, 0.82306327375812148},
    {0.5, 0.15, 0.58388242077036517},
    {0.5, 0.4, 0.37109336952269757},
    {0.5, 0.5, 0.3173105078629141},
    {0.5, 0.7, 0.23672357063785736},
    {0.5, 1.0, 0.15729920705028513},
    {0.5, 1.5, 0.083264516663550402},
    {0.5, 2.5, 0.025347318677468264},
    {1.0, 0.05, 0.95122942450071401},
    {1.0, 0.3, 0.74081822068171787},
    {1.0, 0.8, 0.44932896411722159},
    {1.0, 1.0, 0.36787944117144232},
    {1.0, 1.4, 0.24659696394160648},
    {1.0, 2.0, 0.13533528323661269},
    {1.0, 3.0, 0.049787068367863943},
    {1.0, 5.0, 0.0067379469990854671},
    {1.5, 0.075, 0.98522605819435765},
    {1.5, 0.45, 0.82542780904166075},
    {1.5, 1.2, 0.49363462271172799},
    {1.5, 1.5, 0.39162517627108896},
    {1.5, 2.1, 0.24066188520961541},
    {1.5, 3.0, 0.11161022509471256},
    {1.5, 4.5, 0.029290886534888232},
    {1.5, 7.5, 0.0018166489665723232},
    {2.0, 0.1, 0.99532115983955553},
    {2.0, 0.6, 0.87809861775044229},
    {2.0, 1.6, 0.52493094678610406},
    {2.0, 2.0, 0.40600584970983808},
    {2.0, 2.8, 0.23107823797582827},
    {2.0, 4.0, 0.091578194443670901},
    {2.0, 6.0, 0.017351265236664509},
    {2.0, 10.0, 0.00049939922738733337},
    {2.5, 0.125, 0.99847918144663156},
    {2.5, 0.75, 0.91306981454439546},
    {2.5, 2.0, 0.54941595135278023},
    {2.5, 2.5, 0.41588018699550792},
    {2.5, 3.5, 0.22064030793671079},
    {2.5, 5.0, 0.075235246146512179},
    {2.5, 7.5, 0.010362337915786437},
    {2.5, 12.5, 0.00013933379118562617},
    {3.5, 0.175, 0.99983169861630497},
    {3.5, 1.05, 0.95409870630844189},
    {3.5, 2.8, 0.58715098377233818},
    {3.5, 3.5, 0.42887985755305472},
    {3.5, 4.9, 0.20019343641295214},
    {3.5, 7.0, 0.051181353413065451},
    {3.5, 10.5, 0.0037701500511461668},
    {3.5, 17.5, 1.1184430509074327e-5},
    {5.0, 0.25, 0.99999338828943897},
    {5.0, 1.5, 0.98142406377785933},
    {5.0, 4.0, 0.62883693517987352},
    {5.0, 5.0, 0.44049328506521241},
    {5.0, 7.0, 0.17299160788207135},
    {5.0, 10.0, 0.029252688076961073},
    {5.0, 15.0, 0.00085664121077530039},
    {5.0, 25.0, 2.6690834249044956e-7},
    {10.0, 0.5, 0.999999999829033},
    {10.0, 3.0, 0.99889751186988452},
    {10.0, 8.0, 0.7166242587270109},
    {10.0, 10.0, 0.45792971447185221},
    {10.0, 14.0, 0.109399369642739},
    {10.0, 20.0, 0.0049954123083075872},
    {10.0, 30.0, 7.1217508628155771e-6},
    {10.0, 50.0, 1.2596084591660908e-12},
}};

}  // namespace keyrace::testing

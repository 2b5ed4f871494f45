"""Generated by scripts/gen_hankel_cheb.py; do not edit."""

import numpy as np

BREAKS = np.array([6.0, 10.0, 18.0, 40.0])
NTERMS = np.array([14, 12, 10, 8])
# interval i maps v = 1/x^2 in [VA[i], VB[i]] onto [-1, 1]
VA = np.array([0.01, 0.0030864197530864196, 0.000625, 0.0])
VB = np.array([0.027777777777777776, 0.01, 0.0030864197530864196, 0.000625])

P0 = np.array([
    [0.9987121179893299, -0.0005918985046937111, 3.4958057726571284e-06, -5.577815934286662e-08, 1.5409868130559118e-09, -6.060009632628264e-11, 3.0511124503714955e-12, -1.8446374371701008e-13, 1.2843720518491926e-14, -1.000725675000689e-15, 8.547193466144033e-17, -7.880661213477209e-18, 7.75156915620379e-19, -7.963410147359938e-20],
    [0.9995451928028458, -0.00023822959734405328, 6.11052384549022e-07, -4.640305853209606e-09, 6.664152929077906e-11, -1.4727873294437412e-12, 4.453988823258674e-14, -1.710938602332432e-15, 7.937163255465876e-17, -4.289958654492946e-18, 2.6308661773813675e-19, -1.7836723599288115e-20, 0.0, 0.0],
    [0.9998699856403377, -8.602985102946799e-05, 8.261772336478449e-08, -2.4746518506425046e-10, 1.4889772055536765e-12, -1.468079717880354e-14, 2.1066929181058634e-16, -4.070946337080788e-18, 1.0029404192302915e-19, -3.0210557942661325e-21, 0.0, 0.0, 0.0, 0.0],
    [0.9999780437288527, -2.1950816659382075e-05, 5.45017003014744e-09, -4.3108158547648285e-12, 7.041546141818688e-15, -1.947807367216513e-17, 8.135165374554533e-20, -4.758723166073775e-22, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
])

XQ0 = np.array([
    [-0.12369455174198699, 0.0005876785158669597, -6.384530169294641e-06, 1.4278524652314431e-07, -4.932883096911055e-09, 2.2822165862243359e-10, -1.3026325537913288e-11, 8.712202278510227e-13, -6.596570754358785e-14, 5.5195040479110505e-15, -5.014496297007192e-16, 4.881491188491909e-17, -5.039303070335586e-18, 5.402012992795907e-19],
    [-0.12453122483881525, 0.00024363489086818636, -1.1855790582872231e-06, 1.301266480595216e-08, -2.401818306518581e-10, 6.392608490193341e-12, -2.2352419212185957e-13, 9.657446108995618e-15, -4.940743081189246e-16, 2.9022044558319734e-17, -1.912725192704343e-18, 1.3804975578924975e-19, 0.0, 0.0],
    [-0.12486502015276811, 8.912595112141214e-05, -1.650899477249285e-07, 7.290693241693685e-10, -5.758246957327265e-12, 6.982053675328316e-14, -1.1817460454011354e-15, 2.616473862931049e-17, -7.230645214576147e-19, 2.403368675449646e-20, 0.0, 0.0, 0.0, 0.0],
    [-0.12497714495336933, 2.2844022678467604e-05, -1.1010970527763643e-08, 1.2953511895563576e-11, -2.8070666283987907e-14, 9.66438097462502e-17, -4.822965377367906e-19, 3.27655092721086e-21, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
])

P1 = np.array([
    [1.0021614019193144, 0.0009986811148787278, -4.57857262058252e-06, 6.744703189283338e-08, -1.7924065929800498e-09, 6.888892862569368e-11, -3.4161303623293743e-12, 2.0430093323511736e-13, -1.410890346786953e-14, 1.0922608158041074e-15, -9.280613646032114e-17, 8.520091296689953e-18, -8.3500717251961e-19, 8.552018554643117e-20],
    [1.0007599957073972, 0.0003988631664818697, -7.914163766796859e-07, 5.53715170327558e-09, -7.640428722935099e-11, 1.6492623852038435e-12, -4.91115890237426e-14, 1.8660556410569152e-15, -8.586621158530776e-17, 4.611826184473073e-18, -2.814050153810773e-19, 1.9000879234099002e-20, 0.0, 0.0],
    [1.0002168672280505, 0.00014357444864495546, -1.0645908739044661e-07, 2.9335221966901954e-10, -1.6939555292271224e-12, 1.6299494333413182e-14, -2.30168302759871e-16, 4.397510709609182e-18, -1.0742949798411234e-19, 3.215061512017958e-21, 0.0, 0.0, 0.0, 0.0],
    [1.0000366000226895, 3.659300753035162e-05, -7.010053817280605e-09, 5.097340310745091e-12, -7.985911669441401e-15, 2.1546382403544894e-17, -8.851226346116995e-20, 5.1169422269765595e-22, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
])

XQ1 = np.array([
    [0.3731592217307253, -0.0008332570528084525, 7.946395617594672e-06, -1.6843995339684487e-07, 5.652588980505214e-09, -2.567932615350439e-10, 1.4474141590846188e-11, -9.591629324252766e-13, 7.21108746968911e-14, -5.999668270661092e-15, 5.425554195246234e-16, -5.261225890143664e-17, 5.413430158943838e-18, -5.786897661645317e-19],
    [0.37434189438732873, -0.0003427397163854385, 1.4597669287144412e-06, -1.515851252116016e-08, 2.714961822080109e-10, -7.091508793565727e-12, 2.4480131039200506e-13, -1.0478701353709284e-14, 5.323109149269324e-16, -3.109455320016278e-17, 2.040114229795299e-18, -1.4670256183583409e-19, 0.0, 0.0],
    [0.3748108629278088, -0.0001249550179234758, 2.0223554729505541e-07, -8.438183216838005e-10, 6.460221548300196e-12, -7.681336458931949e-14, 1.2827962725997037e-15, -2.8127274004513046e-17, 7.715982992102682e-19, -2.5499937833461034e-20, 0.0, 0.0, 0.0, 0.0],
    [0.37496799705260964, -3.198946922725955e-05, 1.3463177094758687e-08, -1.4954514044380875e-11, 3.139485367930621e-14, -1.0593673253270458e-16, 5.213907087679014e-19, -3.506438716935676e-21, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
])

// Generated by an mpmath run at 60 digits; do not edit by hand.
/// Even Taylor coefficients `(re, im)` of the Riemann–Siegel kernel
/// `F(z) = (exp(πi(z²/2 + 3/8)) − i√2·cos(πz/2)) / (2cos(πz)) = Σ c_{2n} z^{2n}`.
pub(crate) const KERNEL_TAYLOR: [(f64, f64); 52] = [
    (1.91341716182544885864e-1, -2.45167014930904146337e-1),
    (2.1862023403876022468e-1, -3.69338348849629525894e-2),
    (6.6188287740171761662e-2, 6.35343938561460293104e-2),
    (-6.80251302383709432749e-3, 2.722391266357006742e-2),
    (-6.78381098505179044396e-3, 1.38576087710665201019e-3),
    (-8.11862661572232641427e-4, -1.18944944610137801346e-3),
    (1.48526768666898453916e-4, -2.12698201928933237799e-4),
    (3.97165043976073479401e-5, 1.11713274019901514474e-5),
    (2.32780623072522525185e-7, 5.87285839865206967128e-6),
    (-7.16362581547755287704e-7, 2.49821255292351788518e-7),
    (-5.1774235561564730375e-8, -7.30870030510155187526e-8),
    (6.17896354193086902806e-9, -7.53679144816402080334e-9),
    (8.94054192897745249283e-10, 4.10442579733122855191e-10),
    (-1.69570719496351795347e-11, 9.10655955029408452184e-11),
    (-8.16331695128295255069e-12, 4.34809909524961887768e-13),
    (-1.89255465927061019143e-13, -6.52091326154013000576e-13),
    (4.66371162960086242283e-14, -2.57469883919482188615e-14),
    (2.61092150798906842766e-15, 2.97833519608628722635e-15),
    (-1.67533653637213189476e-16, 2.24175696419651709018e-16),
    (-1.70621326140586324704e-17, -7.99366137877345651503e-18),
    (2.87560167071619958017e-19, -1.17689435164675447099e-18),
    (7.44765068160575272738e-20, 3.42414156995798203177e-21),
    (6.28268635851070842665e-22, 4.35443246567800588728e-21),
    (-2.36064762507171283448e-22, 8.04267701087506652247e-23),
    (-6.63453468151980999637e-24, -1.18740481432849497736e-23),
    (5.52671999756070917227e-25, -4.53387352249942049386e-25),
    (2.74982318876373275557e-26, 2.36221324196368940938e-26),
    (-9.11568825115901314032e-28, 1.52441323594288704871e-27),
    (-7.84470186886044007343e-29, -3.05376769632561859542e-29),
    (7.91981754411900580533e-31, -3.78159070755405732713e-30),
    (1.71731036271860201102e-31, 7.63667984255359235914e-33),
    (8.51051675015850887659e-34, 7.37239794358934089332e-33),
    (-2.99755965247890836682e-34, 8.353560735145063784e-35),
    (-5.24384137704722618342e-36, -1.15483797163770253417e-35),
    (4.21106758917466053927e-37, -2.74934693285423474199e-37),
    (1.29235192988597785658e-38, 1.44884359634065712173e-38),
    (-4.67381968744499260684e-40, 5.61065982323916191859e-40),
    (-2.28470961262185064883e-41, -1.39669220827569176484e-41),
    (3.7727986973826952606e-43, -8.80581903146455444566e-43),
    (3.23090794279252458655e-44, 8.68926548031948889411e-45),
    (-1.39411643743760217738e-46, 1.13276172675095386437e-45),
    (-3.80447233804337906442e-47, 6.12133809380806426528e-49),
    (-1.8900728501624484989e-49, -1.2259179962100529709e-48),
    (3.79281351433761719591e-50, -1.12460512432025037414e-50),
    (5.05801430119825650325e-52, 1.12662490893697891472e-51),
    (-3.21010683628347216806e-53, 1.98681005116801711e-53),
    (-7.15322355699254850882e-55, -8.75576100169094977352e-55),
    (2.27768520025932556987e-56, -2.4137455694352433625e-56),
    (7.72711942995602933493e-58, 5.61474132859325584229e-58),
    (-1.29670716959081641475e-59, 2.36427249130765023695e-59),
    (-6.94746836932199509325e-61, -2.74450144766107672612e-61),
    (5.06516509736079881218e-63, -1.96711189229948593247e-62),
];

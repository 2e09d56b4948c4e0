#!/usr/bin/env python3
"""Regenerates the bundled data fixtures in canonical JSON form.

Canonical form matches the library's own dump: alphabetically sorted object
keys, sorted arrays, two-space indent, trailing newline.
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

SS = "sign_symptom"
PC = "preexisting_condition"

# (concept_id, label, noun_supports, adjective_supports, category)
CORE_FACTS = [
    ("25064002", "headache", ["headache", "headaches", "head pain"], [], SS),
    ("386661006", "fever", ["fever", "fevers", "high temperature", "temperature", "pyrexia"],
     ["feverish", "febrile"], SS),
    ("49727002", "cough", ["cough", "coughs", "coughing"], [], SS),
    ("267036007", "shortness of breath",
     ["shortness of breath", "breathlessness", "dyspnoea", "dyspnea", "difficulty breathing"],
     ["breathless", "short of breath"], SS),
    ("84229001", "fatigue", ["fatigue", "tiredness", "exhaustion", "lethargy"],
     ["tired", "fatigued", "exhausted", "lethargic", "weary"], SS),
    ("271807003", "rash", ["rash", "rashes", "skin eruption"], [], SS),
    ("56018004", "wheeze", ["wheeze", "wheezing", "wheezes"], ["wheezy"], SS),
    ("40917007", "confusion", ["confusion", "disorientation"], ["confused", "disoriented"], SS),
    ("48694002", "anxiety", ["anxiety", "anxiousness"], ["anxious"], SS),
    ("422587007", "nausea", ["nausea", "queasiness"], ["nauseous", "nauseated", "queasy", "sick"],
     SS),
    ("422400008", "vomiting", ["vomiting", "vomit", "emesis", "being sick"], [], SS),
    ("62315008", "diarrhoea", ["diarrhoea", "diarrhea", "loose stools"], [], SS),
    ("162397003", "sore throat", ["sore throat", "throat pain", "pharyngitis"], [], SS),
    ("29857009", "chest pain", ["chest pain", "chest pains"], [], SS),
    ("21522001", "abdominal pain",
     ["abdominal pain", "stomach ache", "tummy ache", "belly pain", "stomach pain"], [], SS),
    ("404640003", "dizziness", ["dizziness", "dizzy spells", "lightheadedness", "giddiness"],
     ["dizzy", "lightheaded", "giddy"], SS),
    ("43724002", "chills", ["chills", "rigors", "shivering", "shivers"], [], SS),
    ("68962001", "muscle pain", ["muscle pain", "muscle aches", "myalgia", "aching muscles"],
     [], SS),
    ("44169009", "loss of smell", ["loss of smell", "anosmia", "smell loss"], [], SS),
    ("36955009", "loss of taste", ["loss of taste", "ageusia", "taste loss"], [], SS),
    ("64531003", "runny nose", ["runny nose", "rhinorrhoea", "rhinorrhea"], [], SS),
    ("68235000", "nasal congestion", ["nasal congestion", "blocked nose", "stuffy nose"], [], SS),
    ("275280004", "sneezing", ["sneezing", "sneezes"], [], SS),
    ("66857006", "haemoptysis", ["haemoptysis", "hemoptysis", "coughing up blood"], [], SS),
    ("80313002", "palpitations", ["palpitations", "heart racing", "racing heart"], [], SS),
    ("271594007", "fainting", ["fainting", "syncope", "blackout", "blackouts"], [], SS),
    ("193462001", "insomnia", ["insomnia", "sleeplessness", "trouble sleeping"], [], SS),
    ("79890006", "loss of appetite", ["loss of appetite", "poor appetite", "anorexia"], [], SS),
    ("89362005", "weight loss", ["weight loss"], [], SS),
    ("42984000", "night sweats", ["night sweats"], [], SS),
    ("415690000", "sweating", ["sweating", "sweats", "perspiration"], ["sweaty"], SS),
    ("161891005", "back pain", ["back pain", "backache"], [], SS),
    ("57676002", "joint pain", ["joint pain", "arthralgia", "aching joints", "joint pains"],
     [], SS),
    ("16001004", "earache", ["earache", "ear pain"], [], SS),
    ("41652007", "eye pain", ["eye pain", "sore eyes", "painful eyes"], [], SS),
    ("246636008", "blurred vision", ["blurred vision", "blurry vision"], [], SS),
    ("60862001", "tinnitus", ["tinnitus", "ringing in ears"], [], SS),
    ("15188001", "hearing loss", ["hearing loss", "deafness"], [], SS),
    ("50219008", "hoarseness", ["hoarseness", "hoarse voice"], ["hoarse"], SS),
    ("40739000", "difficulty swallowing", ["difficulty swallowing", "dysphagia"], [], SS),
    ("14760008", "constipation", ["constipation"], ["constipated"], SS),
    ("16331000", "heartburn", ["heartburn", "acid reflux"], [], SS),
    ("162031009", "indigestion", ["indigestion", "dyspepsia"], [], SS),
    ("116289008", "bloating", ["bloating", "abdominal bloating"], ["bloated"], SS),
    ("405729008", "rectal bleeding", ["rectal bleeding", "blood in stool"], [], SS),
    ("418290006", "itching", ["itching", "pruritus", "itch"], ["itchy"], SS),
    ("126485001", "hives", ["hives", "urticaria", "nettle rash"], [], SS),
    ("267038008", "swelling", ["swelling", "oedema", "edema"], ["swollen"], SS),
    ("44077006", "numbness", ["numbness"], ["numb"], SS),
    ("62507009", "tingling", ["tingling", "pins and needles"], [], SS),
    ("13791008", "weakness", ["weakness", "asthenia"], ["weak"], SS),
    ("26079004", "tremor", ["tremor", "tremors", "shaking"], [], SS),
    ("91175000", "seizure", ["seizure", "seizures", "convulsion", "convulsions", "fits"], [], SS),
    ("271782001", "drowsiness", ["drowsiness", "sleepiness"], ["drowsy", "sleepy"], SS),
    ("367391008", "malaise", ["malaise", "feeling unwell"], ["unwell"], SS),
    ("34095006", "dehydration", ["dehydration"], ["dehydrated"], SS),
    ("3415004", "cyanosis", ["cyanosis", "blue lips"], ["cyanosed"], SS),
    ("2776000", "delirium", ["delirium"], ["delirious"], SS),
    ("7011001", "hallucinations", ["hallucinations", "hallucination"], [], SS),
    ("48167000", "memory loss", ["memory loss", "forgetfulness"], ["forgetful"], SS),
    ("35489007", "depression", ["depression", "low mood"], ["depressed"], SS),
    ("225624000", "panic attacks", ["panic attacks", "panic attack"], [], SS),
    ("24199005", "agitation", ["agitation"], ["agitated"], SS),
    ("23924001", "chest tightness", ["chest tightness", "tight chest"], [], SS),
    ("28743005", "productive cough", ["productive cough", "chesty cough"], [], SS),
    ("11833005", "dry cough", ["dry cough"], [], SS),
    ("248595008", "phlegm", ["phlegm", "sputum"], [], SS),
    ("70407001", "stridor", ["stridor"], [], SS),
    ("3424008", "tachycardia", ["tachycardia", "fast heart rate"], [], SS),
    ("48867003", "bradycardia", ["bradycardia", "slow heart rate"], [], SS),
    ("45007003", "low blood pressure", ["low blood pressure", "hypotension"], [], SS),
    ("389086002", "hypoxia", ["hypoxia", "low oxygen"], [], SS),
    ("233604007", "pneumonia", ["pneumonia"], [], SS),
    ("32398004", "bronchitis", ["bronchitis"], [], SS),
    ("36971009", "sinusitis", ["sinusitis", "sinus infection"], [], SS),
    ("90176007", "tonsillitis", ["tonsillitis"], [], SS),
    ("9826008", "conjunctivitis", ["conjunctivitis", "red eyes", "pink eye"], [], SS),
    ("27355003", "toothache", ["toothache", "dental pain"], [], SS),
    ("37796009", "migraine", ["migraine", "migraines"], [], SS),
    ("6142004", "influenza", ["influenza", "flu"], [], SS),
    ("82272006", "common cold", ["common cold", "head cold"], [], SS),
    ("30746006", "swollen glands", ["swollen glands", "lymphadenopathy", "enlarged glands"],
     [], SS),
    ("161882006", "neck stiffness", ["neck stiffness", "stiff neck"], [], SS),
    ("409668002", "photophobia", ["photophobia", "light sensitivity"], [], SS),
    ("249366005", "nosebleed", ["nosebleed", "nosebleeds", "epistaxis"], [], SS),
    ("8011004", "slurred speech", ["slurred speech", "dysarthria"], [], SS),
    ("22253000", "pain", ["pain"], ["painful"], SS),
    ("49650001", "painful urination", ["painful urination", "dysuria", "burning urination"],
     [], SS),
    ("162116003", "urinary frequency", ["urinary frequency", "frequent urination"], [], SS),
    ("34436003", "blood in urine", ["blood in urine", "haematuria", "hematuria"], [], SS),
    ("68566005", "urinary tract infection", ["urinary tract infection"], [], SS),
    ("54150009", "upper respiratory tract infection", ["upper respiratory tract infection"],
     [], SS),
    ("405737000", "sore ear", ["sore ear"], [], SS),
    ("162057007", "nausea and vomiting", ["nausea and vomiting"], [], SS),
    ("248626009", "leg cramps", ["leg cramps", "leg cramp"], [], SS),
    ("309529002", "leg swelling", ["leg swelling", "swollen legs", "ankle swelling"], [], SS),
    ("102594003", "chest discomfort", ["chest discomfort", "uncomfortable chest"], [], SS),
    ("248648000", "night cough", ["night cough", "nocturnal cough"], [], SS),
    ("59265000", "restlessness", ["restlessness"], ["restless"], SS),
    ("162076009", "excessive thirst", ["excessive thirst", "polydipsia"], ["thirsty"], SS),
    ("165232002", "reduced urine output", ["reduced urine output", "oliguria"], [], SS),
    ("271863002", "abdominal cramps", ["abdominal cramps", "stomach cramps", "cramps"], [], SS),
    ("246612005", "double vision", ["double vision", "diplopia"], [], SS),
    ("18165001", "jaundice", ["jaundice", "yellow skin"], ["jaundiced"], SS),
    ("79879001", "facial pain", ["facial pain", "face pain"], [], SS),
    ("247373008", "groin pain", ["groin pain"], [], SS),
    ("76948002", "breast pain", ["breast pain"], [], SS),
    ("247355005", "neck pain", ["neck pain"], [], SS),
    ("161972006", "shoulder pain", ["shoulder pain"], [], SS),
    ("30989003", "knee pain", ["knee pain"], [], SS),
    ("57298006", "hip pain", ["hip pain"], [], SS),
    ("102556003", "leg pain", ["leg pain"], [], SS),
    ("53057004", "hand pain", ["hand pain"], [], SS),
    ("47933007", "foot pain", ["foot pain"], [], SS),
    ("65958008", "arm pain", ["arm pain"], [], SS),
    ("301366005", "rib pain", ["rib pain"], [], SS),
    ("274667000", "jaw pain", ["jaw pain"], [], SS),
    ("162230007", "cold hands", ["cold hands"], [], SS),
    ("367089001", "cold feet", ["cold feet"], [], SS),
    ("89032003", "mouth ulcers", ["mouth ulcers", "oral ulcers", "mouth ulcer"], [], SS),
    ("221360009", "dry mouth", ["dry mouth", "xerostomia"], [], SS),
    ("249474003", "metallic taste", ["metallic taste"], [], SS),
    ("64379006", "drooling", ["drooling"], [], SS),
    ("271681002", "stomach upset", ["stomach upset", "upset stomach"], [], SS),
    ("139394000", "heavy periods", ["heavy periods", "menorrhagia"], [], SS),
    ("431416003", "irregular heartbeat", ["irregular heartbeat", "irregular pulse"], [], SS),
    ("248490000", "bloodshot eyes", ["bloodshot eyes"], [], SS),
    ("246679005", "watery eyes", ["watery eyes", "eye watering"], [], SS),
    ("65124004", "bruising", ["bruising", "bruises"], ["bruised"], SS),
    ("239159001", "chilblains", ["chilblains"], [], SS),
    ("402600000", "dry skin", ["dry skin"], [], SS),
    ("247472004", "blisters", ["blisters", "blister"], [], SS),
    ("399963005", "skin abrasion", ["skin abrasion", "graze"], [], SS),
    ("125667009", "bruise", ["bruise", "contusion"], [], SS),
    ("308921004", "pale skin", ["pale skin", "pallor"], ["pale"], SS),
    ("248234008", "poor concentration", ["poor concentration", "difficulty concentrating"],
     [], SS),
    ("301345002", "feeling faint", ["feeling faint"], ["faint"], SS),
    ("68235002", "irritability", ["irritability"], ["irritable"], SS),
    ("24184005", "raised blood pressure", ["raised blood pressure"], [], SS),
    ("386807006", "memory impairment", ["memory impairment", "poor memory"], [], SS),
    ("300528000", "wrist pain", ["wrist pain"], [], SS),
    ("74323005", "elbow pain", ["elbow pain"], [], SS),
    ("298364001", "ankle pain", ["ankle pain"], [], SS),
    ("12584003", "bone pain", ["bone pain"], [], SS),
    ("162948007", "throat clearing", ["throat clearing"], [], SS),
    # Pre-existing conditions
    ("195967001", "asthma", ["asthma"], ["asthmatic"], PC),
    ("73211009", "diabetes", ["diabetes", "diabetes mellitus"], ["diabetic"], PC),
    ("13645005", "copd", ["copd", "chronic obstructive pulmonary disease"], [], PC),
    ("38341003", "hypertension", ["hypertension", "high blood pressure"], ["hypertensive"], PC),
    ("56265001", "heart disease", ["heart disease", "cardiac disease"], [], PC),
    ("84114007", "heart failure", ["heart failure"], [], PC),
    ("49436004", "atrial fibrillation", ["atrial fibrillation"], [], PC),
    ("194828000", "angina", ["angina"], [], PC),
    ("230690007", "stroke", ["stroke", "cerebrovascular accident"], [], PC),
    ("84757009", "epilepsy", ["epilepsy"], ["epileptic"], PC),
    ("363346000", "cancer", ["cancer", "malignancy"], [], PC),
    ("90708001", "kidney disease", ["kidney disease", "renal disease"], [], PC),
    ("235856003", "liver disease", ["liver disease", "hepatic disease"], [], PC),
    ("414915002", "obesity", ["obesity"], ["obese"], PC),
    ("52448006", "dementia", ["dementia"], [], PC),
    ("234532001", "immunosuppression", ["immunosuppression"], ["immunosuppressed"], PC),
    ("77386006", "pregnancy", ["pregnancy"], ["pregnant"], PC),
    ("77176002", "smoker", ["smoker", "smoking history"], [], PC),
    ("40930008", "hypothyroidism", ["hypothyroidism", "underactive thyroid"], [], PC),
    ("34486009", "hyperthyroidism", ["hyperthyroidism", "overactive thyroid"], [], PC),
    ("396275006", "osteoarthritis", ["osteoarthritis"], [], PC),
    ("69896004", "rheumatoid arthritis", ["rheumatoid arthritis"], [], PC),
    ("24700007", "multiple sclerosis", ["multiple sclerosis"], [], PC),
    ("49049000", "parkinson disease", ["parkinson disease", "parkinsons"], [], PC),
    ("13644009", "high cholesterol", ["high cholesterol", "hypercholesterolaemia"], [], PC),
    ("7200002", "alcoholism", ["alcoholism", "alcohol dependence"], [], PC),
    ("371631005", "panic disorder", ["panic disorder"], [], PC),
    ("197480006", "anxiety disorder", ["anxiety disorder"], [], PC),
    ("35919005", "autism", ["autism"], ["autistic"], PC),
    ("406506008", "adhd", ["adhd", "attention deficit"], [], PC),
]

CORE_ABBREVIATIONS = {
    "sob": "shortness of breath",
    "h/a": "headache",
    "n/v": "nausea and vomiting",
    "d/v": "diarrhoea and vomiting",
    "dib": "difficulty breathing",
    "cp": "chest pain",
    "abdo": "abdominal",
    "temp": "temperature",
    "hx": "history",
    "sx": "symptoms",
    "rx": "treatment",
    "dx": "diagnosis",
    "appt": "appointment",
    "gp": "general practitioner",
    "meds": "medications",
    "pmh": "past medical history",
    "o/e": "on examination",
    "c/o": "complains of",
    "uti": "urinary tract infection",
    "urti": "upper respiratory tract infection",
    "wk": "week",
    "wks": "weeks",
    "yr": "year",
    "yrs": "years",
    "hrs": "hours",
    "mins": "minutes",
    "sats": "oxygen saturation",
    "bp": "blood pressure",
    "hr": "heart rate",
    "pt": "patient",
    "wt": "weight",
    "v": "very",
}

SEVERITY_CUES = [
    "slight", "mild", "moderate", "severe", "intermittent", "continuous",
    "persistent", "occasional", "high", "low", "bad",
]

DURATION_CUE_HEADS = ["ago", "for", "since"]

# RECAP-style curated subset: acute-assessment concepts plus extra supports
# for concepts the core file already has (merged by concept_id at load).
CURATED_FACTS = [
    ("386661006", "fever", ["fever", "raised temperature"], ["hot"], SS),
    ("267036007", "shortness of breath", ["shortness of breath", "air hunger"], ["puffed"], SS),
    ("84229001", "fatigue", ["fatigue", "no energy"], [], SS),
    ("840539006", "covid infection", ["covid infection", "covid", "coronavirus"], [], SS),
    ("62479008", "aids", ["aids"], [], PC),
    ("271825005", "respiratory distress", ["respiratory distress"], [], SS),
    ("161955002", "throat tightness", ["throat tightness"], [], SS),
    ("23624000", "chest infection", ["chest infection"], [], SS),
    ("312342009", "worsening breathlessness", ["worsening breathlessness"], [], SS),
    ("422650009", "social isolation", ["social isolation"], [], SS),
    ("248223003", "brain fog", ["brain fog"], [], SS),
    ("426000000", "fever over 38 degrees", ["fever over 38 degrees"], [], SS),
]

CURATED_ABBREVIATIONS = {
    "cov": "covid",
    "o2": "oxygen",
}


def facts_json(rows):
    out = []
    for cid, label, nouns, adjs, cat in rows:
        nset = sorted(set(nouns) | {label.lower()})
        out.append({
            "concept_id": cid,
            "label": label,
            "category": cat,
            "noun_supports": nset,
            "adjective_supports": sorted(set(adjs)),
        })
    out.sort(key=lambda f: f["concept_id"])
    return out


def check_disjoint(rows):
    seen = {}
    for cid, label, nouns, adjs, cat in rows:
        for p in set(nouns) | set(adjs) | {label.lower()}:
            if p in seen and seen[p] != cid:
                raise SystemExit(f"support phrase '{p}' under two concepts: {seen[p]}, {cid}")
            seen[p] = cid


def dump(path, doc):
    with open(path, "w") as f:
        f.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print("wrote", path)


def main():
    os.makedirs(DATA, exist_ok=True)
    check_disjoint(CORE_FACTS)
    check_disjoint(CURATED_FACTS)

    dump(os.path.join(DATA, "lexicon_core.json"), {
        "abbreviations": CORE_ABBREVIATIONS,
        "duration_cue_heads": sorted(DURATION_CUE_HEADS),
        "facts": facts_json(CORE_FACTS),
        "severity_cues": sorted(SEVERITY_CUES),
    })
    dump(os.path.join(DATA, "lexicon_curated.json"), {
        "abbreviations": CURATED_ABBREVIATIONS,
        "duration_cue_heads": [],
        "facts": facts_json(CURATED_FACTS),
        "severity_cues": [],
    })

    dump(os.path.join(DATA, "severity_classes.json"), {
        "class_order": ["none", "mild", "moderate", "severe"],
        "cues": {
            "slight": "mild",
            "mild": "mild",
            "low": "mild",
            "moderate": "moderate",
            "intermittent": "moderate",
            "continuous": "moderate",
            "persistent": "moderate",
            "occasional": "moderate",
            "high": "moderate",
            "bad": "moderate",
            "severe": "severe",
        },
    })

    dump(os.path.join(DATA, "onset_bins.json"), {
        "classes": ["under_3_days", "3_to_14_days", "over_14_days"],
        "unknown_class": "unknown",
        "upper_bounds": [2, 14],
    })

    questions = [
        {"id": 2, "text": "Does the patient have shortness of breath?", "kind": "yes_no",
         "target": "267036007"},
        {"id": 3, "text": "Does the patient have a fever?", "kind": "yes_no",
         "target": "386661006"},
        {"id": 4, "text": "Is the patient breathless?", "kind": "yes_no",
         "target": "267036007"},
        {"id": 5, "text": "Does the patient have fatigue?", "kind": "yes_no",
         "target": "84229001"},
        {"id": 6, "text": "Does the patient have a rash?", "kind": "yes_no",
         "target": "271807003"},
        {"id": 7, "text": "Does the patient have a headache?", "kind": "yes_no",
         "target": "25064002"},
        {"id": 8, "text": "Does the patient have a wheeze?", "kind": "yes_no",
         "target": "56018004"},
        {"id": 9, "text": "Does the patient have confusion?", "kind": "yes_no",
         "target": "40917007"},
        {"id": 10, "text": "How severe are the symptoms?", "kind": "multiclass",
         "target": "severity", "classes": ["none", "mild", "moderate", "severe"]},
        {"id": 11, "text": "When did the symptoms first start?", "kind": "multiclass",
         "target": "onset",
         "classes": ["under_3_days", "3_to_14_days", "over_14_days", "unknown"]},
    ]
    dump(os.path.join(DATA, "questions.json"), questions)

    stopwords = sorted([
        "the", "a", "an", "this", "that", "is", "was", "are", "am", "be", "been",
        "were", "has", "have", "had", "do", "does", "did", "can", "will", "would",
        "could", "may", "might", "must", "shall", "should", "patient", "pt", "she",
        "he", "they", "and", "or",
    ])
    with open(os.path.join(DATA, "stopwords.txt"), "w") as f:
        f.write("\n".join(stopwords) + "\n")
    print("wrote stopwords.txt")

    with open(os.path.join(DATA, "wordlist.txt"), "w") as f:
        f.write("\n".join(sorted(set(WORDLIST))) + "\n")
    print("wrote wordlist.txt")

    corpus = os.path.join(DATA, "corpus")
    os.makedirs(corpus, exist_ok=True)
    with open(os.path.join(corpus, "notes.jsonl"), "w") as f:
        for note_id, text in CLEAN_NOTES + MESSY_NOTES:
            f.write(json.dumps({"note_id": note_id, "text": text}) + "\n")
    print("wrote corpus/notes.jsonl")

    with open(os.path.join(corpus, "gold_answers.jsonl"), "w") as f:
        for note_id, answers in GOLD_ANSWERS:
            doc = {"note_id": note_id,
                   "answers": {str(k): v for k, v in sorted(answers.items())}}
            f.write(json.dumps(doc) + "\n")
    print("wrote corpus/gold_answers.jsonl")


# ---------------------------------------------------------------------------
# Common-English spell-check vocabulary. Protects ordinary words from being
# "corrected" into lexicon terms (e.g. feel -> feet, exertion -> eruption).
# Deliberately excludes near-neighbours of common typo targets (e.g. "real",
# which would hijack realy -> really).

WORDLIST = """
able about above after afternoon again ago all almost along already also
although always am an and another any anyone anything appears appointment
april are around as at ate august away back bad bathroom be became because
become bed bedroom been before began begin behind being below best better
between big bit both breathe breaths but by call called came can car carer
chair child children climbing clinic cold come coming complete completely
could cream daughter day
days december did different difficult dinner doctor does doing done dose doses
down downstairs drink drinking drops during each early easy eat eating effort
eight either eleven evening ever every everyone exertion face family far fast
father february feel feeling feels feet fell felt few fifty fine first five
floor food foot forty four friday friend from garden gets getting give given
go goes going gone good got had hard hardly has have having he health heavy
held help helped helping helps her here herself him himself his home hospital
hour hours house how hundred hurt hurts husband if ill in inhaler inside into
is it its
january july june just keep keeping kept kitchen large last late later least
left less little long lot lots lost lunch lying made make making many march
may
maybe me meal meals medication medicine might minute minutes monday month
months more morning most mostly mother much must my near nearly need needs
never new next night nine no none noon normal not november now nurse october
of off often okay old on once one only or other our out outside over own
paracetamol part past perhaps phone pill pills place plenty pm poor poorly
quarter quick quickly quite rang rarely rather really rest resting room
said same saturday saw says school second see seeing seems seen sentence
sentences september seven several shop short should side since sitting six
sleep slept slow slowly small so some someone something sometimes son soon
sore spells spoke
stairs stand standing start started starting starts states stay still stop
stopped struggles struggling sunday surgery table tablet tablets take takes
taking talk tea ten than that the their them themselves then there these
they thing things thinks third thirty this those thought three through
thursday tickle time tired to today toilet told tomorrow tonight too took
tuesday twelve twenty twice two under unwell up upstairs us usual usually
very visit visited walk walked walking want wants warm was washing water we
wednesday week weeks well went were what when where which while who whole
wife will with without woke work working worse worst would year years
yesterday yet young your
""".split()


# ---------------------------------------------------------------------------
# Bundled two-tier corpus.
# Clean tier: every segment expands through a sentence pattern.
# Messy tier: typos, shorthand, dropped subjects, run-on fragments.

CLEAN_NOTES = [
    ("clean_01", "The patient had severe headache for three days"),
    ("clean_02", "the patient has a mild fever since yesterday"),
    ("clean_03", "cough and wheeze"),
    ("clean_04", "the patient does not have a rash"),
    ("clean_05", "fatigue and dizziness for two weeks"),
    ("clean_06", "no shortness of breath, no wheeze"),
    ("clean_07", "she has shortness of breath, she has a fever"),
    ("clean_08", "the patient had severe chest pain two days ago"),
    ("clean_09", "the patient has diarrhoea and vomiting for five days"),
    ("clean_10", "the patient has a sore throat and earache"),
    ("clean_11", "the patient has quite severe fatigue, the patient has weakness"),
    ("clean_12", "the patient does not have fever or chills"),
    ("clean_13", "moderate abdominal pain for one week"),
    ("clean_14", "the patient has nasal congestion and sneezing"),
    ("clean_15", "the patient has a cough for two months"),
    ("clean_16", "the patient has intermittent palpitations, occasional dizziness"),
    ("clean_17", "no nausea, no vomiting, no diarrhoea"),
    ("clean_18", "the patient has slight wheeze"),
    ("clean_19", "the patient has confusion and drowsiness"),
    ("clean_20", "the patient has a rash with severe itching"),
    ("clean_21", "the patient denies chest pain and palpitations"),
    ("clean_22", "the patient has a rash and itching"),
    ("clean_23", "the patient has a headache and photophobia"),
    ("clean_24", "the patient is feverish, the patient has a bad cough and a sore throat"),
    ("clean_25", "persistent dry cough for ten days"),
    ("clean_26", "the patient has fatigue and muscle aches for three weeks"),
    ("clean_27", "the patient does not have confusion"),
    ("clean_28", "mild sore throat for four days"),
    ("clean_29", "the patient has a wheeze and shortness of breath"),
    ("clean_30", "the patient has anxiety, the patient has insomnia"),
]

MESSY_NOTES = [
    ("messy_01", "headache couple weeks last 2 days more feverish and cough slight sob, "
                 "needs to take deep breaths, even on minimal effort."),
    ("messy_02", "no cough tickle only at start first few days sweaty 36 never over 37 "
                 "headaches diarrhoea not sleeping much not eating drinking breathlessness "
                 "back and chest feel uncomfortable unable to take deep breath struggling "
                 "to complete sentence lying in bed mostly struggles to get up stairs and "
                 "exhausts here no phlegm toilet on same floor as bedroom and able to get "
                 "there herself"),
    ("messy_03", "fevr and coughh last 3 days, sob, on exertion"),
    ("messy_04", "pt severe h/a 2 days, n/v, no visual disturbance"),
    ("messy_05", "temp 38.5 tonight, wheeze and tight chest, very tired"),
    ("messy_06", "cant sleep, exhausted, headaches 2 wks, on and off"),
    ("messy_07", "wife called 111 again, pt confused and drowsy since yesterday"),
    ("messy_08", "breathles, on minimal exertion, cant finish sentences, o2 sats okay she says"),
    ("messy_09", "3 dyas fevre, mild coughing, lost taste + smell"),
    ("messy_10", "covid contact last wk, fevre and dry cough since 2 days ago, feels rotten"),
    ("messy_11", "no sob, no weeze, chest tightness when walking upstairs, slept ok"),
    ("messy_12", "dizzy spells, fainted twice yesterday, bp low she thinks"),
    ("messy_13", "weak and dizzy three wks, wt loss, appetite poor"),
    ("messy_14", "sore throat sinse yesterday, swollen glands, mild temp"),
    ("messy_15", "pt v anxious, palpitations, on and off again, no cp"),
    ("messy_16", "diarhoea + vomiting since 3 days, tummy ache, of her food not keeping "
                 "much down"),
    ("messy_17", "realy bad headache since last nite, light hurts eyes, paracetamol not "
                 "helping"),
    ("messy_18", "wheezey + breathless, climbing stairs v hard, inhaler no help"),
    ("messy_19", "feverish last nite, temp 39, rigors, achy all over"),
    ("messy_20", "pt exhasted, slight sob, worse when walking, lost smell + taste last wk"),
]


def answers(sob="no", fever="no", fatigue="no", rash="no", headache="no", wheeze="no",
            confusion="no", severity="none", onset="unknown"):
    return {2: sob, 3: fever, 4: sob, 5: fatigue, 6: rash, 7: headache, 8: wheeze,
            9: confusion, 10: severity, 11: onset}


# Hand annotation of each note's intended meaning. For the clean tier this
# coincides with what the pipeline extracts; messy notes are annotated from
# the text's meaning, so notes the pipeline cannot fully parse score below
# 100% here by design.
GOLD_ANSWERS = [
    ("clean_01", answers(headache="yes", severity="severe", onset="3_to_14_days")),
    ("clean_02", answers(fever="yes", severity="mild", onset="under_3_days")),
    ("clean_03", answers(wheeze="yes")),
    ("clean_04", answers()),
    ("clean_05", answers(fatigue="yes", onset="3_to_14_days")),
    ("clean_06", answers()),
    ("clean_07", answers(sob="yes", fever="yes")),
    ("clean_08", answers(severity="severe", onset="under_3_days")),
    ("clean_09", answers(onset="3_to_14_days")),
    ("clean_10", answers()),
    ("clean_11", answers(fatigue="yes", severity="severe")),
    ("clean_12", answers()),
    ("clean_13", answers(severity="moderate", onset="3_to_14_days")),
    ("clean_14", answers()),
    ("clean_15", answers(onset="over_14_days")),
    ("clean_16", answers(severity="moderate")),
    ("clean_17", answers()),
    ("clean_18", answers(wheeze="yes", severity="mild")),
    ("clean_19", answers(confusion="yes")),
    ("clean_20", answers(rash="yes")),
    ("clean_21", answers()),
    ("clean_22", answers(rash="yes")),
    ("clean_23", answers(headache="yes")),
    ("clean_24", answers(fever="yes", severity="moderate")),
    ("clean_25", answers(severity="moderate", onset="3_to_14_days")),
    ("clean_26", answers(fatigue="yes", onset="over_14_days")),
    ("clean_27", answers()),
    ("clean_28", answers(severity="mild", onset="3_to_14_days")),
    ("clean_29", answers(sob="yes", wheeze="yes")),
    ("clean_30", answers()),
    ("messy_01", answers(sob="yes", fever="yes", headache="yes", severity="mild",
                         onset="3_to_14_days")),
    ("messy_02", answers(sob="yes", fatigue="yes", headache="yes", onset="3_to_14_days")),
    ("messy_03", answers(sob="yes", fever="yes", onset="3_to_14_days")),
    ("messy_04", answers(headache="yes", severity="severe", onset="under_3_days")),
    ("messy_05", answers(fever="yes", fatigue="yes", wheeze="yes", onset="under_3_days")),
    ("messy_06", answers(fatigue="yes", headache="yes", onset="3_to_14_days")),
    ("messy_07", answers(confusion="yes", onset="under_3_days")),
    ("messy_08", answers(sob="yes")),
    ("messy_09", answers(fever="yes", severity="mild", onset="3_to_14_days")),
    ("messy_10", answers(fever="yes", onset="under_3_days")),
    ("messy_11", answers()),
    ("messy_12", answers()),
    ("messy_13", answers(onset="over_14_days")),
    ("messy_14", answers(fever="yes", severity="mild", onset="under_3_days")),
    ("messy_15", answers()),
    ("messy_16", answers(onset="3_to_14_days")),
    ("messy_17", answers(headache="yes", severity="moderate", onset="under_3_days")),
    ("messy_18", answers(sob="yes", wheeze="yes")),
    ("messy_19", answers(fever="yes", onset="under_3_days")),
    ("messy_20", answers(sob="yes", fatigue="yes", severity="mild", onset="3_to_14_days")),
]


if __name__ == "__main__":
    main()

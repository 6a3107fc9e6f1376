"""Schemas and deterministic content for the fixture databases."""

import random

SCHEMAS = {}


def schema(db_id):
    def wrap(fn):
        SCHEMAS[db_id] = fn
        return fn
    return wrap


FIRST = ["Kacey", "Hipolito", "Mavis", "Houston", "Jeffrey", "Ora", "Vernice", "Karley", "Nora", "Lorenz",
         "Rolando", "Tre", "Melisa", "Cindy", "Heather", "Alvis", "Kade", "Tara", "Opal", "Monte"]
LAST = ["Pagac", "Funk", "Schmitt", "Walter", "Haley", "Moen", "Rippin", "Tromp", "Hartmann", "Kshlerin",
        "DuBuque", "Nicolas", "Bogan", "Mertz", "Bahringer", "Ziemann"]
CITIES = ["Lake Tia", "Port Reinhold", "Goldnerton", "West Leonard", "Brakusfurt", "Bradford", "Springfield", "Austin"]
STATES = ["Wisconsin", "Mississippi", "Indiana", "Virginia", "Maryland", "Vermont"]


@schema("dog_kennels")
def dog_kennels(r):
    ddl = """
CREATE TABLE breeds (breed_code TEXT PRIMARY KEY, breed_name TEXT);
CREATE TABLE owners (owner_id INTEGER PRIMARY KEY, first_name TEXT, last_name TEXT, city TEXT, state TEXT, email_address TEXT);
CREATE TABLE dogs (dog_id INTEGER PRIMARY KEY, owner_id INTEGER REFERENCES owners(owner_id), breed_code TEXT REFERENCES breeds(breed_code),
  name TEXT, age INTEGER, sex TEXT, weight REAL, date_of_birth DATE, abandoned_yn TEXT);
CREATE TABLE professionals (professional_id INTEGER PRIMARY KEY, role_code TEXT, first_name TEXT, city TEXT, state TEXT);
CREATE TABLE treatments (treatment_id INTEGER PRIMARY KEY, dog_id INTEGER REFERENCES dogs(dog_id),
  professional_id INTEGER REFERENCES professionals(professional_id), treatment_type TEXT, date_of_treatment DATETIME, cost_of_treatment REAL);
"""
    rows = {"breeds": [("BUL", "Bulldog"), ("ESK", "Eskimo"), ("HUS", "Husky")]}
    rows["owners"] = [(i, FIRST[i % 20], LAST[i % 16], CITIES[i % 8], STATES[i % 6], f"owner{i}@example.com") for i in range(1, 16)]
    dog_names = ["Kacey", "Hipolito", "Mavis", "Houston", "Jeffrey", "Merritt", "Narciso", "George", "Bessie", "Betty",
                 "Holden", "Jesus", "Lyric", "Evangeline", "Troy"]
    dogs = []
    for i in range(1, 16):
        dogs.append((i, r.randint(1, 15), ["BUL", "ESK", "HUS"][i % 3], dog_names[i - 1], r.randint(1, 9),
                     "F" if i % 2 else "M", round(r.uniform(1, 10), 2),
                     f"20{r.randint(10, 18)}-{r.randint(1, 12):02d}-{r.randint(1, 28):02d}", "Yes" if i % 4 == 0 else "No"))
    rows["dogs"] = dogs
    rows["professionals"] = [(i, ["Veterenarian", "Employee"][i % 2], FIRST[(i + 5) % 20], CITIES[(i + 3) % 8], STATES[i % 6]) for i in range(1, 11)]
    rows["treatments"] = [(i, r.choice([1, 2, 3, 4, 5, 7, 8, 10, 12, 14]), r.randint(1, 10), ["EXAM", "VAC", "WALK"][i % 3],
                           f"2018-03-{r.randint(1, 28):02d} 1{r.randint(0, 9)}:00:00", float(r.randint(5, 30) * 10)) for i in range(1, 16)]
    return ddl, rows


@schema("product_catalog")
def product_catalog(r):
    ddl = """
CREATE TABLE products (product_id INTEGER PRIMARY KEY, product_type_code TEXT, product_name TEXT, product_price REAL);
CREATE TABLE suppliers (supplier_id INTEGER PRIMARY KEY, supplier_name TEXT, city TEXT);
CREATE TABLE product_suppliers (product_id INTEGER REFERENCES products(product_id), supplier_id INTEGER REFERENCES suppliers(supplier_id),
  total_amount_purchased REAL, date_supplied_from DATE);
"""
    prods = [(1, "Clothes", "red jeans", 734.73), (2, "Clothes", "yellow jeans", 687.23), (3, "Clothes", "black jeans", 695.16),
             (4, "Clothes", "blue jeans", 939.57), (5, "Clothes", "red jeans", 534.52), (6, "Electronics", "monitor", 213.76),
             (7, "Electronics", "mouse", 203.74), (8, "Electronics", "keyboard", 109.99), (9, "Electronics", "speaker", 211.01),
             (10, "Hardware", "hammer", 22.5), (11, "Hardware", "drill", 99.0), (12, "Hardware", "saw", 45.1),
             (13, "Food", "apple", 1.5), (14, "Food", "bread", 3.25)]
    rows = {"products": prods}
    rows["suppliers"] = [(1, "Lidl", "Springfield"), (2, "AB Store", "Austin"), (3, "Tesco", "Bradford"), (4, "Audi", "Austin")]
    rows["product_suppliers"] = [(p, s, float(r.randint(100, 9000)), f"2017-0{r.randint(1, 9)}-1{r.randint(0, 9)}")
                                 for p, s in sorted({(r.randint(1, 14), r.randint(1, 4)) for _ in range(18)})]
    return ddl, rows


@schema("employee_hire_evaluation")
def employee_hire_evaluation(r):
    ddl = """
CREATE TABLE employee (Employee_ID INTEGER PRIMARY KEY, Name TEXT, Age INTEGER, City TEXT);
CREATE TABLE shop (Shop_ID INTEGER PRIMARY KEY, Name TEXT, Location TEXT, District TEXT, Number_products INTEGER, Manager_name TEXT);
CREATE TABLE hiring (Shop_ID INTEGER REFERENCES shop(Shop_ID), Employee_ID INTEGER PRIMARY KEY REFERENCES employee(Employee_ID),
  Start_from TEXT, Is_full_time TEXT);
CREATE TABLE evaluation (Employee_ID INTEGER REFERENCES employee(Employee_ID), Year_awarded TEXT, Bonus REAL);
"""
    names = ["George Chuter", "Lee Mears", "Mark Regan", "Jason Hobson", "Tim Payne", "Andrew Sheridan", "Matt Stevens",
             "Phil Vickery", "Steve Borthwick", "Louis Deacon"]
    cities = ["Bristol", "Bath", "Bristol", "Bristol", "Wasps", "Sale", "Bath", "Wasps", "Leicester", "Leicester"]
    rows = {"employee": [(i + 1, names[i], [23, 29, 43, 30, 29, 28, 29, 36, 39, 27][i], cities[i]) for i in range(10)]}
    rows["shop"] = [(1, "FC Haka", "Valkeakoski", "Tehtaan kenttä", 3516, "Olli Huttunen"),
                    (2, "HJK", "Helsinki", "Finnair Stadium", 10770, "Antti Muurinen"),
                    (3, "FC Honka", "Espoo", "Tapiolan Urheilupuisto", 6000, "Mika Lehkosuo"),
                    (4, "FC Inter", "Turku", "Veritas Stadion", 10000, "Job Dragtsma"),
                    (5, "FF Jaro", "Jakobstad", "Jakobstads Centralplan", 5000, "Mika Laurikainen"),
                    (6, "FC KooTeePee", "Kotka", "Arto Tolsa Areena", 4780, "Tommi Kautonen")]
    rows["hiring"] = [(1, 1, "2009", "T"), (1, 2, "2003", "T"), (8, 3, "2011", "F"), (4, 4, "2012", "T"),
                      (5, 5, "2013", "T"), (2, 6, "2010", "F"), (6, 7, "2008", "F"), (3, 8, "2014", "T")]
    rows["hiring"] = [(s if s <= 6 else 6, e, y, f) for s, e, y, f in rows["hiring"]]
    rows["evaluation"] = [(1, "2011", 3000.0), (2, "2015", 3200.0), (1, "2016", 2900.0), (4, "2017", 3200.0), (7, "2018", 4000.0), (10, "2016", 3500.0)]
    return ddl, rows


@schema("world_1")
def world_1(r):
    ddl = """
CREATE TABLE country (Code TEXT PRIMARY KEY, Name TEXT, Continent TEXT, Region TEXT, SurfaceArea REAL, IndepYear INTEGER,
  Population INTEGER, LifeExpectancy REAL, GNP REAL, GovernmentForm TEXT, HeadOfState TEXT);
CREATE TABLE city (ID INTEGER PRIMARY KEY, Name TEXT, CountryCode TEXT REFERENCES country(Code), District TEXT, Population INTEGER);
CREATE TABLE countrylanguage (CountryCode TEXT REFERENCES country(Code), Language TEXT, IsOfficial TEXT, Percentage REAL,
  PRIMARY KEY (CountryCode, Language));
"""
    countries = [
        ("AFG", "Afghanistan", "Asia", "Southern and Central Asia", 652090.0, 1919, 22720000, 45.9, 5976.0, "Islamic Emirate", "Mohammad Omar"),
        ("NLD", "Netherlands", "Europe", "Western Europe", 41526.0, 1581, 15864000, 78.3, 371362.0, "Constitutional Monarchy", "Beatrix"),
        ("FRA", "France", "Europe", "Western Europe", 551500.0, 843, 59225700, 78.8, 1424285.0, "Republic", "Jacques Chirac"),
        ("DEU", "Germany", "Europe", "Western Europe", 357022.0, 1955, 82164700, 77.4, 2133367.0, "Federal Republic", "Johannes Rau"),
        ("CHN", "China", "Asia", "Eastern Asia", 9572900.0, -1523, 1277558000, 71.4, 982268.0, "People'sRepublic", "Jiang Zemin"),
        ("JPN", "Japan", "Asia", "Eastern Asia", 377829.0, -660, 126714000, 80.7, 3787042.0, "Constitutional Monarchy", "Akihito"),
        ("IND", "India", "Asia", "Southern and Central Asia", 3287263.0, 1947, 1013662000, 62.5, 447114.0, "Federal Republic", "Kocheril Raman Narayanan"),
        ("BRA", "Brazil", "South America", "South America", 8547403.0, 1822, 170115000, 62.9, 776739.0, "Federal Republic", "Fernando Henrique Cardoso"),
        ("ARG", "Argentina", "South America", "South America", 2780400.0, 1816, 37032000, 75.1, 340238.0, "Federal Republic", "Fernando de la Rua"),
        ("USA", "United States", "North America", "North America", 9363520.0, 1776, 278357000, 77.1, 8510700.0, "Federal Republic", "George W. Bush"),
        ("MEX", "Mexico", "North America", "Central America", 1958201.0, 1810, 98881000, 71.5, 414972.0, "Federal Republic", "Vicente Fox Quesada"),
        ("EGY", "Egypt", "Africa", "Northern Africa", 1001449.0, 1922, 68470000, 63.3, 82710.0, "Republic", "Hosni Mubarak"),
        ("NGA", "Nigeria", "Africa", "Western Africa", 923768.0, 1960, 111506000, 51.6, 65707.0, "Federal Republic", "Olusegun Obasanjo"),
        ("AUS", "Australia", "Oceania", "Australia and New Zealand", 7741220.0, 1901, 18886000, 79.8, 351182.0, "Constitutional Monarchy", "Elisabeth II"),
        ("ABW", "Aruba", "North America", "Caribbean", 193.0, None, 103000, 78.4, 828.0, "Nonmetropolitan Territory", "Beatrix"),
    ]
    rows = {"country": countries}
    cities = [(1, "Kabul", "AFG", "Kabol", 1780000), (2, "Amsterdam", "NLD", "Noord-Holland", 731200), (3, "Rotterdam", "NLD", "Zuid-Holland", 593321),
              (4, "Paris", "FRA", "Ile-de-France", 2125246), (5, "Marseille", "FRA", "Provence", 798430), (6, "Berlin", "DEU", "Berliini", 3386667),
              (7, "Shanghai", "CHN", "Shanghai", 9696300), (8, "Peking", "CHN", "Peking", 7472000), (9, "Tokyo", "JPN", "Tokyo-to", 7980230),
              (10, "Mumbai", "IND", "Maharashtra", 10500000), (11, "Sao Paulo", "BRA", "Sao Paulo", 9968485), (12, "Buenos Aires", "ARG", "Distrito Federal", 2982146),
              (13, "New York", "USA", "New York", 8008278), (14, "Los Angeles", "USA", "California", 3694820), (15, "Mexico City", "MEX", "Distrito Federal", 8591309),
              (16, "Cairo", "EGY", "Kairo", 6789479), (17, "Lagos", "NGA", "Lagos", 1518000), (18, "Sydney", "AUS", "New South Wales", 3276207),
              (19, "Oranjestad", "ABW", "Aruba", 29034), (20, "Utrecht", "NLD", "Utrecht", 234323)]
    rows["city"] = cities
    langs = [("AFG", "Pashto", "T", 52.4), ("AFG", "Dari", "T", 32.1), ("NLD", "Dutch", "T", 95.6), ("NLD", "Arabic", "F", 0.9),
             ("FRA", "French", "T", 93.6), ("FRA", "Arabic", "F", 2.5), ("DEU", "German", "T", 91.3), ("DEU", "Turkish", "F", 2.6),
             ("CHN", "Chinese", "T", 92.0), ("JPN", "Japanese", "T", 99.1), ("IND", "Hindi", "T", 39.9), ("IND", "English", "T", 0.2),
             ("BRA", "Portuguese", "T", 97.5), ("ARG", "Spanish", "T", 96.8), ("USA", "English", "T", 86.2), ("USA", "Spanish", "F", 7.5),
             ("MEX", "Spanish", "T", 92.1), ("EGY", "Arabic", "T", 98.8), ("NGA", "English", "T", 0.1), ("NGA", "Yoruba", "F", 21.4),
             ("AUS", "English", "T", 81.2), ("ABW", "Dutch", "T", 5.3), ("ABW", "Papiamento", "F", 76.7)]
    rows["countrylanguage"] = langs
    return ddl, rows


@schema("concert_singer")
def concert_singer(r):
    ddl = """
CREATE TABLE stadium (Stadium_ID INTEGER PRIMARY KEY, Location TEXT, Name TEXT, Capacity INTEGER, Highest INTEGER, Lowest INTEGER, Average INTEGER);
CREATE TABLE singer (Singer_ID INTEGER PRIMARY KEY, Name TEXT, Country TEXT, Song_Name TEXT, Song_release_year TEXT, Age INTEGER, Is_male TEXT);
CREATE TABLE concert (concert_ID INTEGER PRIMARY KEY, concert_Name TEXT, Theme TEXT, Stadium_ID INTEGER REFERENCES stadium(Stadium_ID), Year TEXT);
CREATE TABLE singer_in_concert (concert_ID INTEGER REFERENCES concert(concert_ID), Singer_ID INTEGER REFERENCES singer(Singer_ID));
"""
    rows = {"stadium": [(1, "Raith Rovers", "Stark's Park", 10104, 4812, 1294, 2106), (2, "Ayr United", "Somerset Park", 11998, 2363, 1057, 1477),
                        (3, "East Fife", "Bayview Stadium", 2000, 1980, 533, 864), (4, "Queen's Park", "Hampden Park", 52500, 1763, 466, 730),
                        (5, "Stirling Albion", "Forthbank Stadium", 3808, 1125, 404, 642), (6, "Arbroath", "Gayfield Park", 4125, 921, 411, 638),
                        (7, "Alloa Athletic", "Recreation Park", 3100, 1057, 331, 637)]}
    rows["singer"] = [(1, "Joe Sharp", "Netherlands", "You", "1992", 52, "F"), (2, "Timbaland", "United States", "Dangerous", "2008", 32, "T"),
                      (3, "Justin Brown", "France", "Hey Oh", "2013", 29, "T"), (4, "Rose White", "France", "Sun", "2003", 41, "F"),
                      (5, "John Nizinik", "France", "Gentleman", "2014", 43, "T"), (6, "Tribal King", "France", "Love", "2016", 25, "T")]
    rows["concert"] = [(1, "Auditions", "Free choice", 1, "2014"), (2, "Super bootcamp", "Free choice 2", 2, "2014"),
                       (3, "Home Visits", "Bleeding Love", 2, "2015"), (4, "Week 1", "Wide Awake", 7, "2014"),
                       (5, "Week 1", "Happy Tonight", 7, "2015"), (6, "Week 2", "Party All Night", 7, "2015")]
    rows["singer_in_concert"] = [(1, 2), (1, 3), (1, 5), (2, 3), (2, 6), (3, 5), (4, 4), (5, 6), (5, 3), (6, 2)]
    return ddl, rows


@schema("pets_1")
def pets_1(r):
    ddl = """
CREATE TABLE student (StuID INTEGER PRIMARY KEY, LName TEXT, Fname TEXT, Age INTEGER, Sex TEXT, Major INTEGER, Advisor INTEGER, city_code TEXT);
CREATE TABLE pets (PetID INTEGER PRIMARY KEY, PetType TEXT, pet_age INTEGER, weight REAL);
CREATE TABLE has_pet (StuID INTEGER REFERENCES student(StuID), PetID INTEGER REFERENCES pets(PetID));
"""
    lnames = ["Smith", "Kim", "Jones", "Kumar", "Gompers", "Schultz", "Apap", "Nelson", "Tai", "Lee", "Adams", "Davis"]
    fnames = ["Linda", "Tracy", "Shiela", "Dinesh", "Paul", "Andy", "Lisa", "Jandy", "Eric", "Derek", "David", "Steven"]
    rows = {"student": [(1001 + i, lnames[i], fnames[i], [18, 19, 21, 20, 26, 18, 18, 20, 19, 17, 22, 20][i],
                         "F" if i in (0, 1, 2, 6, 7) else "M", [600, 600, 600, 600, 600, 600, 600, 600, 50, 550, 100, 50][i],
                         [1121, 7712, 7792, 8423, 1121, 1148, 8918, 2192, 1148, 8722, 2192, 7271][i],
                         ["BAL", "HKG", "WAS", "CHI", "YYZ", "BAL", "PIT", "HKG", "PIT", "WAS", "BAL", "NYC"][i]) for i in range(12)]}
    rows["pets"] = [(2001, "cat", 3, 12.0), (2002, "dog", 2, 13.4), (2003, "dog", 1, 9.3), (2004, "bird", 1, 0.4), (2005, "cat", 5, 8.1)]
    rows["has_pet"] = [(1001, 2001), (1002, 2002), (1002, 2003), (1004, 2004), (1008, 2005)]
    return ddl, rows


@schema("car_1")
def car_1(r):
    ddl = """
CREATE TABLE car_makers (Id INTEGER PRIMARY KEY, Maker TEXT, FullName TEXT, Country TEXT);
CREATE TABLE model_list (ModelId INTEGER PRIMARY KEY, Maker INTEGER REFERENCES car_makers(Id), Model TEXT);
CREATE TABLE cars_data (Id INTEGER PRIMARY KEY, ModelId INTEGER REFERENCES model_list(ModelId), MPG REAL, Cylinders INTEGER,
  Horsepower INTEGER, Weight INTEGER, Year INTEGER);
"""
    makers = [(1, "amc", "American Motor Company", "usa"), (2, "volkswagen", "Volkswagen", "germany"), (3, "bmw", "BMW", "germany"),
              (4, "gm", "General Motors", "usa"), (5, "ford", "Ford Motor Company", "usa"), (6, "toyota", "Toyota", "japan"),
              (7, "honda", "Honda", "japan"), (8, "fiat", "Fiat", "italy")]
    models = [(1, 1, "amc"), (2, 2, "audi"), (3, 3, "bmw"), (4, 4, "buick"), (5, 4, "chevrolet"), (6, 5, "ford"),
              (7, 6, "toyota"), (8, 7, "honda"), (9, 8, "fiat"), (10, 2, "volkswagen"), (11, 5, "mercury")]
    rows = {"car_makers": makers, "model_list": models}
    cars = []
    for i in range(1, 31):
        cars.append((i, r.randint(1, 11), round(r.uniform(10, 40), 1), r.choice([4, 6, 8]), r.randint(60, 230),
                     r.randint(1800, 4800), r.randint(1970, 1982)))
    rows["cars_data"] = cars
    return ddl, rows


@schema("orchestra")
def orchestra(r):
    ddl = """
CREATE TABLE conductor (Conductor_ID INTEGER PRIMARY KEY, Name TEXT, Age INTEGER, Nationality TEXT, Year_of_Work INTEGER);
CREATE TABLE orchestra (Orchestra_ID INTEGER PRIMARY KEY, Orchestra TEXT, Conductor_ID INTEGER REFERENCES conductor(Conductor_ID),
  Record_Company TEXT, Year_of_Founded REAL, Major_Record_Format TEXT);
CREATE TABLE performance (Performance_ID INTEGER PRIMARY KEY, Orchestra_ID INTEGER REFERENCES orchestra(Orchestra_ID), Type TEXT,
  Official_ratings REAL, Weekly_rank TEXT, Share TEXT);
CREATE TABLE show (Show_ID INTEGER, Performance_ID INTEGER REFERENCES performance(Performance_ID), If_first_show TEXT, Result TEXT, Attendance REAL);
"""
    rows = {"conductor": [(1, "Antal Dorati", 40, "USA", 10), (2, "Igor Stravinsky", 41, "UK", 11), (3, "Colin Davis", 42, "USA", 6),
                          (4, "Paul Jorgensen", 43, "UK", 11), (5, "Antal Brown", 43, "USA", 20), (6, "Charles Dutoit", 43, "France", 12),
                          (7, "Gerard Schwarz", 50, "USA", 20), (8, "Pierre Boulez", 49, "UK", 11)]}
    rows["orchestra"] = [(1, "London Symphony Orchestra", 1, "Mercury Records", 2003, "CD"), (2, "Columbia Symphony Orchestra", 2, "Columbia Masterworks", 2009, "CD / LP"),
                         (3, "Royal Concertgebouw Orchestra", 3, "Philips", 2008, "CD"), (4, "Royal Danish Orchestra", 4, "Kultur", 2002, "DVD"),
                         (5, "Detroit Symphony Orchestra", 5, "Decca Records", 2002, "CD"), (6, "Montreal Symphony Orchestra", 6, "Decca Records", 2004, "CD"),
                         (7, "Seattle Symphony Orchestra", 7, "Delos Records", 2002, "CD"), (8, "Chicago Symphony Orchestra", 8, "Deutsche Grammophon", 2003, "CD")]
    rows["performance"] = [(1, 1, "Auditions 1", 9.58, "1", "22.7%"), (2, 2, "Auditions 2", 9.72, "2", "32.2%"), (3, 3, "Auditions 3", 11.58, "3", "29.2%"),
                           (4, 4, "Auditions 4", 8.97, "4", "21.0%"), (5, 5, "Auditions 5", 9.7, "5", "35.6%"), (6, 6, "Semi-final 1", 9.42, "6", "33.5%"),
                           (7, 7, "Semi-final 2", 9.43, "7", "31.6%"), (8, 8, "Semi-final 3", 9.21, "8", "22.3%")]
    rows["show"] = [(1, 1, "Yes", "T", 1026.0), (2, 2, "No", "T", 695.0), (3, 3, "Yes", "T", 555.0), (4, 4, "No", "F", 1925.0),
                    (5, 5, "Yes", "T", 2431.0), (6, 6, "No", "F", 601.0)]
    return ddl, rows


@schema("museum_visit")
def museum_visit(r):
    ddl = """
CREATE TABLE museum (Museum_ID INTEGER PRIMARY KEY, Name TEXT, Num_of_Staff INTEGER, Open_Year TEXT);
CREATE TABLE visitor (ID INTEGER PRIMARY KEY, Name TEXT, Level_of_membership INTEGER, Age INTEGER);
CREATE TABLE visit (Museum_ID INTEGER REFERENCES museum(Museum_ID), visitor_ID INTEGER REFERENCES visitor(ID), Num_of_Ticket INTEGER, Total_spent REAL);
"""
    rows = {"museum": [(1, "Plaza Museum", 62, "2000"), (2, "Capital Plaza Museum", 25, "2012"), (3, "Jefferson Development Museum", 18, "2010"),
                       (4, "Willow Grande Museum", 17, "2011"), (5, "RiverPark Museum", 16, "2008"), (6, "Place Tower Museum", 16, "2008"),
                       (7, "Central City District Residential Museum", 15, "2010"), (8, "ZirconPlaza Museum", 12, "2014")]}
    rows["visitor"] = [(1, "Gonzalo Higuain", 8, 35), (2, "Guti Midfielder", 5, 28), (3, "Arjen Robben", 1, 27), (4, "Raul Brown", 2, 56),
                       (5, "Fernando Gago", 6, 36), (6, "Rafael van der Vaart", 1, 25)]
    rows["visit"] = [(1, 5, 20, 320.14), (2, 5, 4, 89.98), (4, 3, 10, 320.44), (2, 3, 24, 209.98), (4, 6, 3, 20.44), (8, 6, 2, 19.98), (2, 1, 14, 141.42)]
    return ddl, rows


@schema("poker_player")
def poker_player(r):
    ddl = """
CREATE TABLE people (People_ID INTEGER PRIMARY KEY, Nationality TEXT, Name TEXT, Birth_Date DATE, Height REAL);
CREATE TABLE poker_player (Poker_Player_ID INTEGER PRIMARY KEY, People_ID INTEGER REFERENCES people(People_ID), Final_Table_Made REAL,
  Best_Finish REAL, Money_Rank REAL, Earnings REAL);
"""
    rows = {"people": [(1, "Russia", "Aleksey Ostapenko", "1986-05-26", 207.0), (2, "Bulgaria", "Teodor Salparov", "1982-08-16", 182.0),
                       (3, "Russia", "Yevgeni Sivozhelez", "1969-08-08", 196.0), (4, "Russia", "Maksim Botin", "1980-07-14", 194.0),
                       (5, "Russia", "Semen Poltavskiy", "1981-02-08", 205.0), (6, "Russia", "Sergey Grankin", "1985-01-22", 193.0),
                       (7, "Russia", "Roman Bragin", "1987-04-17", 202.0)]}
    rows["poker_player"] = [(1, 1, 42.0, 1.0, 68.0, 476090.0), (2, 2, 10.0, 2.0, 141.0, 189233.0), (3, 5, 21.0, 1.0, 166.0, 104871.0),
                            (4, 6, 19.0, 2.0, 58.0, 596462.0), (5, 7, 26.0, 3.0, 154.0, 142800.0)]
    return ddl, rows


@schema("library")
def library(r):
    ddl = """
CREATE TABLE books (book_id INTEGER PRIMARY KEY, title TEXT, author TEXT, year INTEGER, genre TEXT, available TEXT);
CREATE TABLE members (member_id INTEGER PRIMARY KEY, name TEXT, city TEXT, join_date DATE);
CREATE TABLE loans (loan_id INTEGER PRIMARY KEY, book_id INTEGER REFERENCES books(book_id), member_id INTEGER REFERENCES members(member_id),
  loan_date DATE, returned TEXT);
"""
    books = [(1, "Dune", "Frank Herbert", 1965, "Science Fiction", "Yes"), (2, "Emma", "Jane Austen", 1815, "Romance", "No"),
             (3, "Persuasion", "Jane Austen", 1817, "Romance", "Yes"), (4, "Neuromancer", "William Gibson", 1984, "Science Fiction", "Yes"),
             (5, "Beloved", "Toni Morrison", 1987, "Literary", "No"), (6, "Ulysses", "James Joyce", 1922, "Literary", "Yes"),
             (7, "Hyperion", "Dan Simmons", 1989, "Science Fiction", "No"), (8, "Rebecca", "Daphne du Maurier", 1938, "Mystery", "Yes"),
             (9, "Dracula", "Bram Stoker", 1897, "Horror", "Yes"), (10, "Carrie", "Stephen King", 1974, "Horror", "No")]
    rows = {"books": books}
    rows["members"] = [(1, "Ada Byron", "Springfield", "2015-03-02"), (2, "Ben Okri", "Austin", "2016-07-19"), (3, "Cora Diaz", "Bradford", "2014-11-30"),
                       (4, "Dev Patel", "Austin", "2018-01-05"), (5, "Eve Moss", "Springfield", "2017-06-21"), (6, "Finn Hale", "Bradford", "2019-09-09")]
    loans = []
    for i in range(1, 21):
        loans.append((i, r.randint(1, 10), r.randint(1, 6), f"2019-{r.randint(1, 12):02d}-{r.randint(1, 28):02d}", "Yes" if r.random() < 0.6 else "No"))
    rows["loans"] = loans
    return ddl, rows


@schema("college_1")
def college_1(r):
    ddl = """
CREATE TABLE department (dept_id INTEGER PRIMARY KEY, dept_name TEXT, building TEXT, budget REAL);
CREATE TABLE instructor (instructor_id INTEGER PRIMARY KEY, name TEXT, dept_id INTEGER REFERENCES department(dept_id), salary REAL);
CREATE TABLE course (course_id INTEGER PRIMARY KEY, title TEXT, dept_id INTEGER REFERENCES department(dept_id), credits INTEGER);
"""
    rows = {"department": [(1, "Biology", "Watson", 90000.0), (2, "Comp. Sci.", "Taylor", 100000.0), (3, "Elec. Eng.", "Taylor", 85000.0),
                           (4, "Finance", "Painter", 120000.0), (5, "History", "Painter", 50000.0), (6, "Music", "Packard", 80000.0),
                           (7, "Physics", "Watson", 70000.0)]}
    rows["instructor"] = [(1, "Srinivasan", 2, 65000.0), (2, "Wu", 4, 90000.0), (3, "Mozart", 6, 40000.0), (4, "Einstein", 7, 95000.0),
                          (5, "El Said", 5, 60000.0), (6, "Gold", 7, 87000.0), (7, "Katz", 2, 75000.0), (8, "Califieri", 5, 62000.0),
                          (9, "Singh", 4, 80000.0), (10, "Crick", 1, 72000.0), (11, "Brandt", 2, 92000.0), (12, "Kim", 3, 80000.0)]
    rows["course"] = [(1, "Intro. to Biology", 1, 4), (2, "Genetics", 1, 4), (3, "Computational Biology", 1, 3), (4, "Intro. to Computer Science", 2, 4),
                      (5, "Game Design", 2, 4), (6, "Robotics", 2, 3), (7, "Image Processing", 2, 3), (8, "Database System Concepts", 2, 3),
                      (9, "Intro. to Digital Systems", 3, 3), (10, "Investment Banking", 4, 3), (11, "World History", 5, 3), (12, "Music Video Production", 6, 3),
                      (13, "Physical Principles", 7, 4)]
    return ddl, rows
